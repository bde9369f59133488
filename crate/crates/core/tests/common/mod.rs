//! Test fixtures shared by the integration suites: system families and
//! oracles that do not go through the library's own code paths.

#![allow(dead_code)]

use covercert_core::constructions::{construct_theorem_lb, shift_expand, ShiftExpansionSpec};
use covercert_core::distortion::DeltaSchedule;
use covercert_core::{BigRational, CongruenceSystem, Limits, ResidueClass};
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_c0de;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn class(a: i128, d: i128) -> ResidueClass {
    ResidueClass::new(a, d).unwrap()
}

pub fn system(pairs: &[(i128, i128)]) -> CongruenceSystem {
    pairs.iter().map(|&(a, d)| class(a, d)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm_of(moduli: impl IntoIterator<Item = u64>) -> u64 {
    moduli.into_iter().fold(1, |acc, d| acc / gcd(acc, d) * d)
}

/// Largest prime factor by naive trial division, `1` for `1`.
pub fn largest_prime(mut n: u64) -> u64 {
    let mut best = 1;
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            best = p;
            n /= p;
        } else {
            p += 1;
        }
    }
    best
}

/// Whether some class contains the integer `x`, checked class by class.
pub fn covered(sys: &CongruenceSystem, x: u64) -> bool {
    sys.classes()
        .iter()
        .any(|c| x % c.modulus() == c.residue())
}

/// Coverage by scanning `0..Q` with no bitmaps.
pub fn naive_covers(sys: &CongruenceSystem) -> bool {
    let q = lcm_of(sys.classes().iter().map(|c| c.modulus()));
    (0..q).all(|x| covered(sys, x))
}

/// The distinct primes of `n` in increasing order.
pub fn primes_of(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

/// Recomputes `P_0, ..., P_J` pointwise on `Z/QZ` straight from the
/// definition and returns, for each level `j`, the masses of the fibers
/// mod `Q_j`.
pub fn pointwise_fiber_masses(sys: &CongruenceSystem, deltas: &[BigRational]) -> Vec<Vec<BigRational>> {
    let big_q = lcm_of(sys.classes().iter().map(|c| c.modulus()));
    let primes = primes_of(big_q);
    let mut partial = vec![1u64];
    for &p in &primes {
        let mut pe = 1;
        while big_q % (pe * p) == 0 {
            pe *= p;
        }
        partial.push(partial.last().unwrap() * pe);
    }
    let n = big_q as usize;
    let mut point = vec![q(1, 1) / BigInt::from(big_q); n];
    let fold = |point: &[BigRational], m: u64| {
        let mut out = vec![BigRational::zero(); m as usize];
        for (x, v) in point.iter().enumerate() {
            out[x % m as usize] += v;
        }
        out
    };
    let mut levels = vec![fold(&point, 1)];
    for (j, &p) in primes.iter().enumerate() {
        let in_b: Vec<bool> = (0..big_q)
            .map(|x| {
                sys.classes()
                    .iter()
                    .any(|c| largest_prime(c.modulus()) == p && x % c.modulus() == c.residue())
            })
            .collect();
        let prev = partial[j];
        let fiber = big_q / prev;
        let mut hits = vec![0u64; prev as usize];
        for x in 0..big_q {
            if in_b[x as usize] {
                hits[(x % prev) as usize] += 1;
            }
        }
        let delta = &deltas[j];
        let one = q(1, 1);
        let next: Vec<BigRational> = (0..big_q)
            .map(|x| {
                let alpha = BigRational::new(hits[(x % prev) as usize].into(), fiber.into());
                let base = &point[x as usize];
                if alpha < *delta {
                    if in_b[x as usize] {
                        BigRational::zero()
                    } else {
                        base / (&one - &alpha)
                    }
                } else if in_b[x as usize] {
                    base * (&alpha - delta) / (&alpha * (&one - delta))
                } else {
                    base / (&one - delta)
                }
            })
            .collect();
        point = next;
        levels.push(fold(&point, partial[j + 1]));
    }
    levels
}

/// Every residue class with modulus in `moduli`.
pub fn all_classes(moduli: &[u64]) -> Vec<ResidueClass> {
    moduli
        .iter()
        .flat_map(|&d| (0..d).map(move |a| ResidueClass::from_reduced(a, d).unwrap()))
        .collect()
}

/// Divisors of 720 in `2..=12`.
pub const SMALL_MODULI: [u64; 9] = [2, 3, 4, 5, 6, 8, 9, 10, 12];

/// All multisets of one to three classes with moduli in [`SMALL_MODULI`].
pub fn exhaustive_small_systems() -> Vec<CongruenceSystem> {
    let classes = all_classes(&SMALL_MODULI);
    let k = classes.len();
    let mut out = Vec::new();
    for a in 0..k {
        out.push(CongruenceSystem::new(vec![classes[a]]));
        for b in a..k {
            out.push(CongruenceSystem::new(vec![classes[a], classes[b]]));
            for c in b..k {
                out.push(CongruenceSystem::new(vec![classes[a], classes[b], classes[c]]));
            }
        }
    }
    out
}

/// Moduli patterns (all dividing 720) whose every residue assignment is
/// enumerated; they include covering and non-covering systems.
pub const TUPLE_PATTERNS: [&[u64]; 4] = [&[2, 3, 4, 6, 12], &[2, 4, 8, 16], &[2, 2, 3, 3, 6], &[3, 5, 6, 10, 20]];

pub fn exhaustive_tuple_systems() -> Vec<CongruenceSystem> {
    let mut out = Vec::new();
    for pattern in TUPLE_PATTERNS {
        let mut residues = vec![0u64; pattern.len()];
        loop {
            out.push(
                pattern
                    .iter()
                    .zip(&residues)
                    .map(|(&d, &a)| ResidueClass::from_reduced(a, d).unwrap())
                    .collect(),
            );
            // odometer increment
            let mut i = 0;
            loop {
                if i == pattern.len() {
                    break;
                }
                residues[i] += 1;
                if residues[i] < pattern[i] {
                    break;
                }
                residues[i] = 0;
                i += 1;
            }
            if i == pattern.len() {
                break;
            }
        }
    }
    out
}

/// A random system of up to `max_classes` classes with moduli in
/// `2..=max_modulus` and lcm at most `max_q`.
pub fn random_system(rng: &mut ChaCha8Rng, max_classes: usize, max_modulus: u64, max_q: u64) -> CongruenceSystem {
    let n = rng.gen_range(1..=max_classes);
    let mut classes = Vec::with_capacity(n);
    let mut q = 1u64;
    while classes.len() < n {
        let d = rng.gen_range(2..=max_modulus);
        let next = q / gcd(q, d) * d;
        if next > max_q {
            continue;
        }
        q = next;
        classes.push(ResidueClass::from_reduced(rng.gen_range(0..d), d).unwrap());
    }
    CongruenceSystem::new(classes)
}

/// A covering system: a translate of a member of the explicit family or of
/// one of its shift expansions, sometimes with an extra class.
pub fn random_covering_system(rng: &mut ChaCha8Rng) -> CongruenceSystem {
    let j = rng.gen_range(5..=8);
    let base = construct_theorem_lb(j).unwrap();
    let base = if rng.gen_bool(0.5) {
        let ell = rng.gen_range(1..=3);
        shift_expand(&ShiftExpansionSpec::new(&base, ell).unwrap(), &Limits::default()).unwrap()
    } else {
        base
    };
    let t = rng.gen_range(0..1000u64);
    let mut classes: Vec<ResidueClass> = base
        .classes()
        .iter()
        .map(|c| ResidueClass::from_reduced(c.residue() + t, c.modulus()).unwrap())
        .collect();
    if rng.gen_bool(0.3) {
        let d = rng.gen_range(2..=12);
        classes.push(ResidueClass::from_reduced(rng.gen_range(0..d), d).unwrap());
    }
    CongruenceSystem::new(classes)
}

/// A random schedule mixing 0, 1/2 and other fractions in `[0, 1/2]`.
pub fn random_schedule(rng: &mut ChaCha8Rng, len: usize) -> DeltaSchedule {
    let deltas = (0..len)
        .map(|_| match rng.gen_range(0..4) {
            0 => q(0, 1),
            1 => q(1, 2),
            _ => {
                let den = rng.gen_range(2..=12i64);
                q(rng.gen_range(0..=den / 2), den)
            }
        })
        .collect();
    DeltaSchedule::new(deltas).unwrap()
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Parses `d.ddd` or `d.ddde±x` exactly.
pub fn parse_decimal(s: &str) -> BigRational {
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap()),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let scale = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u64))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u64))
    }
}

/// `exp(c j²/ln(j+1))` at 80 digits.
pub const THM1_REFERENCE: [(u64, (i64, i64), &str); 9] = [
    (1, (1, 1), "4.2320861065570818828410258696746730775081875"),
    (2, (1, 1), "38.1283044971798060115509594716444170826027192"),
    (3, (1, 1), "659.925984477246079848542140584999323655581752"),
    (5, (1, 1), "1147120.74837245400852644296974954044402214963"),
    (10, (1, 1), "1292666925690541756.54979177972050389360617236"),
    (20, (1, 1), "1.14584825932509983336135840777005278264561886e57"),
    (7, (1, 2), "130876.511931748250149283090238695084974150773"),
    (20, (3, 1), "1.50446236478866363101081732243163485287666809e171"),
    (4, (1, 1000), "1.00999093842143341331033974329431031892018531"),
];

/// `exp(c ln²(s+1)/ln ln(s+2))` at 80 digits.
pub const THM2_REFERENCE: [(u64, (i64, i64), &str); 9] = [
    (1, (1, 1), "165.439074292153633388165909036233966659189673"),
    (2, (1, 1), "40.2499308899416669185140460029180775732105924"),
    (3, (1, 1), "56.7352657090670569007254195605987510692660721"),
    (10, (1, 1), "553.876309480776478829537364959323558065057173"),
    (100, (1, 1), "1096647.87724077568877433093720743887912019862"),
    (1000, (1, 1), "52996624992.7790458835908264964714308421242262"),
    (524288, (1, 1), "165749133904271703265469960758.031396671797776"),
    (64, (2, 5), "129.717602589146061527554820292508209714941867"),
    (5, (7, 1), "457436251631208.695477985942211707466389843807"),
];
