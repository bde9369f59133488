use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PrimeLadder;
use crate::arith::Factorization;
use crate::{CongruenceSystem, Error, Limits, Result};

/// The residues mod `Q_j` lying in `B_j`, the union of the classes whose
/// modulus has largest prime factor `p_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSet {
    level: usize,
    modulus: u64,
    words: Vec<u64>,
    len: u64,
}

impl LevelSet {
    pub fn level(&self) -> usize {
        self.level
    }

    /// `Q_j`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, z: u64) -> bool {
        z < self.modulus && self.words[(z / 64) as usize] >> (z % 64) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&z| self.contains(z))
    }
}

/// Builds `B_level` as a subset of `Z/Q_level Z`.
pub fn level_set(
    sys: &CongruenceSystem,
    ladder: &PrimeLadder,
    level: usize,
    limits: &Limits,
) -> Result<LevelSet> {
    let modulus = ladder.modulus(level);
    if modulus > limits.max_residues {
        return Err(Error::resource(
            "level set enumeration mod Q_j",
            modulus,
            limits.max_residues,
        ));
    }
    let p = ladder.prime(level);
    let mut words = alloc::vec![0u64; modulus.div_ceil(64) as usize];
    let mut largest: BTreeMap<u64, u64> = BTreeMap::new();
    for class in sys.classes() {
        let d = class.modulus();
        let top = *largest
            .entry(d)
            .or_insert_with(|| Factorization::of(d).expect("moduli are positive").largest_prime());
        if top != p {
            continue;
        }
        if modulus % d != 0 {
            return Err(Error::Inconsistent(alloc::format!(
                "modulus {d} with largest prime {p} does not divide Q_{level} = {modulus}"
            )));
        }
        let mut z = class.residue();
        while z < modulus {
            words[(z / 64) as usize] |= 1 << (z % 64);
            z += d;
        }
    }
    let len = words.iter().map(|w| u64::from(w.count_ones())).sum();
    Ok(LevelSet {
        level,
        modulus,
        words,
        len,
    })
}

/// `α_j` as a function on `Z/Q_{j-1}Z`: the share of each fiber lying in
/// `B_j`. Stored as lift counts over the common fiber size `p_j^ν_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha {
    level: usize,
    fiber_size: u64,
    counts: Vec<u64>,
}

impl Alpha {
    pub fn compute(set: &LevelSet, ladder: &PrimeLadder) -> Self {
        let level = set.level();
        let prev = ladder.modulus(level - 1);
        let mut counts = alloc::vec![0u64; prev as usize];
        for z in set.iter() {
            counts[(z % prev) as usize] += 1;
        }
        Self {
            level,
            fiber_size: ladder.fiber_size(level),
            counts,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn fiber_size(&self) -> u64 {
        self.fiber_size
    }

    /// Number of lifts of `y` in `B_j`.
    pub fn count(&self, y: u64) -> u64 {
        self.counts[y as usize]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn value(&self, y: u64) -> BigRational {
        BigRational::new(BigInt::from(self.count(y)), BigInt::from(self.fiber_size))
    }
}

/// A `Q_j`-measurable probability measure on `Z/QZ`, stored as the mass of
/// each fiber `{x : x ≡ y mod Q_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberMeasure {
    level: usize,
    masses: Vec<BigRational>,
}

impl FiberMeasure {
    /// `P_0`, the uniform measure.
    pub fn uniform() -> Self {
        Self {
            level: 0,
            masses: alloc::vec![BigRational::one()],
        }
    }

    pub fn from_masses(level: usize, masses: Vec<BigRational>) -> Self {
        Self { level, masses }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `Q_j`, the number of fibers.
    pub fn modulus(&self) -> u64 {
        self.masses.len() as u64
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.masses
    }

    pub fn mass(&self, y: u64) -> &BigRational {
        &self.masses[y as usize]
    }

    pub fn total(&self) -> BigRational {
        self.masses.iter().fold(BigRational::zero(), |acc, m| acc + m)
    }

    /// Masses of the coarser fibers mod `coarse`, which must divide
    /// [`modulus`](Self::modulus).
    pub fn fold(&self, coarse: u64) -> Vec<BigRational> {
        let mut out = alloc::vec![BigRational::zero(); coarse as usize];
        for (z, m) in self.masses.iter().enumerate() {
            out[z % coarse as usize] += m;
        }
        out
    }

    /// The same measure viewed at level `level - 1`.
    pub fn pushforward(&self, ladder: &PrimeLadder) -> FiberMeasure {
        let coarse = ladder.modulus(self.level - 1);
        FiberMeasure {
            level: self.level - 1,
            masses: self.fold(coarse),
        }
    }
}

fn check_delta(delta: &BigRational) -> Result<()> {
    let half = BigRational::new(1.into(), 2.into());
    if delta < &BigRational::zero() || delta > &half {
        return Err(Error::Domain(alloc::format!(
            "delta {delta} lies outside [0, 1/2]"
        )));
    }
    Ok(())
}

/// Multipliers applied to a lift in and out of `B_j` for a fiber with `k` of
/// its `n` lifts in `B_j`, before the equal split by `n`.
fn step_factors(k: u64, n: u64, delta: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let alpha = BigRational::new(BigInt::from(k), BigInt::from(n));
    if alpha < *delta {
        let off = BigRational::new(BigInt::from(n), BigInt::from(n - k));
        (BigRational::zero(), off)
    } else {
        let off = (&one - delta).recip();
        let on = if k == 0 {
            // no lift of this fiber is in B_j
            BigRational::zero()
        } else {
            (&alpha - delta) / (&alpha * (&one - delta))
        };
        (on, off)
    }
}

/// Builds `P_j` from `P_{j-1}`.
///
/// Each fiber mass is split equally among its `p^ν` lifts. If `α(y) < δ`
/// the lifts in `B_j` get nothing and the rest are scaled by `1/(1-α)`;
/// otherwise lifts in `B_j` are scaled by `(α-δ)/(α(1-δ))` and the rest by
/// `1/(1-δ)`.
pub fn step_measure(
    prev: &FiberMeasure,
    alpha: &Alpha,
    delta: &BigRational,
    set: &LevelSet,
) -> Result<FiberMeasure> {
    check_delta(delta)?;
    let level = prev.level + 1;
    let coarse = prev.modulus();
    let n = alpha.fiber_size;
    if alpha.level != level
        || set.level != level
        || alpha.counts.len() as u64 != coarse
        || set.modulus != coarse * n
    {
        return Err(Error::Inconsistent(alloc::format!(
            "measure at level {}, alpha at level {}, level set at level {} do not line up",
            prev.level,
            alpha.level,
            set.level
        )));
    }
    let n_big = BigRational::from_integer(BigInt::from(n));
    let mut factors: BTreeMap<u64, (BigRational, BigRational)> = BTreeMap::new();
    let mut masses = alloc::vec![BigRational::zero(); set.modulus as usize];
    for y in 0..coarse {
        let k = alpha.count(y);
        let parent = prev.mass(y);
        let mut seen = 0;
        if parent.is_zero() {
            seen = (0..n).filter(|t| set.contains(y + t * coarse)).count() as u64;
        } else {
            let (on, off) = factors
                .entry(k)
                .or_insert_with(|| step_factors(k, n, delta));
            let share = parent / &n_big;
            let on_mass = &share * &*on;
            let off_mass = &share * &*off;
            for t in 0..n {
                let z = y + t * coarse;
                if set.contains(z) {
                    seen += 1;
                    masses[z as usize] = on_mass.clone();
                } else {
                    masses[z as usize] = off_mass.clone();
                }
            }
        }
        if seen != k {
            return Err(Error::Inconsistent(alloc::format!(
                "fiber {y} mod {coarse} has {seen} lifts in B_{level} but alpha counts {k}"
            )));
        }
    }
    Ok(FiberMeasure { level, masses })
}

/// `(E_{j-1}[α_j], E_{j-1}[α_j^2])`.
pub fn moments(prev: &FiberMeasure, alpha: &Alpha) -> Result<(BigRational, BigRational)> {
    if prev.modulus() != alpha.counts.len() as u64 || prev.level + 1 != alpha.level {
        return Err(Error::Inconsistent(
            "moments need P_{j-1} and alpha_j at matching levels".into(),
        ));
    }
    let mut first = BigRational::zero();
    let mut second = BigRational::zero();
    for (mass, &k) in prev.masses.iter().zip(&alpha.counts) {
        if k == 0 || mass.is_zero() {
            continue;
        }
        let k = BigInt::from(k);
        first += mass * &k;
        second += mass * (&k * &k);
    }
    let n = BigInt::from(alpha.fiber_size);
    let m1 = first / &n;
    let m2 = second / (&n * &n);
    Ok((m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ResidueClass;

    fn sys(pairs: &[(i128, i128)]) -> CongruenceSystem {
        pairs
            .iter()
            .map(|&(a, d)| ResidueClass::new(a, d).unwrap())
            .collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ladder(s: &CongruenceSystem) -> PrimeLadder {
        PrimeLadder::new(s.lcm_factorization()).unwrap()
    }

    #[test]
    fn level_sets() {
        let limits = Limits::default();
        let s = sys(&[(0, 2), (0, 3)]);
        let l = ladder(&s);
        let b1: Vec<u64> = level_set(&s, &l, 1, &limits).unwrap().iter().collect();
        assert_eq!(b1, [0]);
        let b2: Vec<u64> = level_set(&s, &l, 2, &limits).unwrap().iter().collect();
        assert_eq!(b2, [0, 3]);

        let s = sys(&[(1, 2), (0, 4)]);
        let b: Vec<u64> = level_set(&s, &ladder(&s), 1, &limits).unwrap().iter().collect();
        assert_eq!(b, [0, 1, 3]);

        // 2 is the largest prime of no modulus
        let s = sys(&[(0, 10), (1, 3)]);
        let l = ladder(&s);
        assert!(level_set(&s, &l, 1, &limits).unwrap().is_empty());
        assert_eq!(level_set(&s, &l, 2, &limits).unwrap().len(), 2);
        assert_eq!(level_set(&s, &l, 3, &limits).unwrap().len(), 3);
    }

    #[test]
    fn alpha_values() {
        let limits = Limits::default();
        let s = sys(&[(0, 2), (0, 3)]);
        let l = ladder(&s);
        let a1 = Alpha::compute(&level_set(&s, &l, 1, &limits).unwrap(), &l);
        assert_eq!(a1.value(0), q(1, 2));
        let a2 = Alpha::compute(&level_set(&s, &l, 2, &limits).unwrap(), &l);
        assert_eq!((a2.value(0), a2.value(1)), (q(1, 3), q(1, 3)));
    }

    #[test]
    fn half_delta_kills_b() {
        let limits = Limits::default();
        let s = sys(&[(0, 2)]);
        let l = ladder(&s);
        let b = level_set(&s, &l, 1, &limits).unwrap();
        let a = Alpha::compute(&b, &l);
        let p1 = step_measure(&FiberMeasure::uniform(), &a, &q(1, 2), &b).unwrap();
        assert_eq!(p1.masses(), &[q(0, 1), q(1, 1)]);
        assert_eq!(moments(&FiberMeasure::uniform(), &a).unwrap(), (q(1, 2), q(1, 4)));
    }

    #[test]
    fn zero_delta_refines_uniformly() {
        let limits = Limits::default();
        let s = sys(&[(0, 2), (0, 3)]);
        let l = ladder(&s);
        let b1 = level_set(&s, &l, 1, &limits).unwrap();
        let p1 = step_measure(&FiberMeasure::uniform(), &Alpha::compute(&b1, &l), &q(0, 1), &b1).unwrap();
        assert_eq!(p1.masses(), &[q(1, 2), q(1, 2)]);
        let b2 = level_set(&s, &l, 2, &limits).unwrap();
        let a2 = Alpha::compute(&b2, &l);
        assert_eq!(moments(&p1, &a2).unwrap(), (q(1, 3), q(1, 9)));
        let p2 = step_measure(&p1, &a2, &q(0, 1), &b2).unwrap();
        assert!(p2.masses().iter().all(|m| *m == q(1, 6)));
        assert_eq!(p2.pushforward(&l), p1);
    }

    #[test]
    fn full_fiber_keeps_mass() {
        // B_1 = everything mod 2, so alpha = 1 and the on-B factor is 1
        let limits = Limits::default();
        let s = sys(&[(0, 2), (1, 2)]);
        let l = ladder(&s);
        let b = level_set(&s, &l, 1, &limits).unwrap();
        let a = Alpha::compute(&b, &l);
        let p1 = step_measure(&FiberMeasure::uniform(), &a, &q(1, 3), &b).unwrap();
        assert_eq!(p1.masses(), &[q(1, 2), q(1, 2)]);
    }

    #[test]
    fn small_alpha_below_delta_renormalizes() {
        // alpha = 1/4 < 1/2: the lift in B dies, the other three get 1/3 each
        let limits = Limits::default();
        let s = sys(&[(0, 4)]);
        let l = ladder(&s);
        let b = level_set(&s, &l, 1, &limits).unwrap();
        let a = Alpha::compute(&b, &l);
        let p1 = step_measure(&FiberMeasure::uniform(), &a, &q(1, 2), &b).unwrap();
        assert_eq!(p1.masses(), &[q(0, 1), q(1, 3), q(1, 3), q(1, 3)]);
        assert_eq!(p1.total(), q(1, 1));
    }

    #[test]
    fn empty_level_is_identity() {
        let limits = Limits::default();
        let s = sys(&[(0, 10), (1, 3)]);
        let l = ladder(&s);
        let b1 = level_set(&s, &l, 1, &limits).unwrap();
        let a1 = Alpha::compute(&b1, &l);
        let p0 = FiberMeasure::uniform();
        assert_eq!(moments(&p0, &a1).unwrap(), (q(0, 1), q(0, 1)));
        for delta in [q(0, 1), q(1, 2)] {
            let p1 = step_measure(&p0, &a1, &delta, &b1).unwrap();
            assert_eq!(p1.masses(), &[q(1, 2), q(1, 2)]);
        }
    }

    #[test]
    fn rejects_bad_delta_and_mismatched_levels() {
        let limits = Limits::default();
        let s = sys(&[(0, 2), (0, 3)]);
        let l = ladder(&s);
        let b1 = level_set(&s, &l, 1, &limits).unwrap();
        let a1 = Alpha::compute(&b1, &l);
        assert!(matches!(
            step_measure(&FiberMeasure::uniform(), &a1, &q(3, 5), &b1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            step_measure(&FiberMeasure::uniform(), &a1, &q(-1, 5), &b1),
            Err(Error::Domain(_))
        ));
        let b2 = level_set(&s, &l, 2, &limits).unwrap();
        assert!(matches!(
            step_measure(&FiberMeasure::uniform(), &a1, &q(0, 1), &b2),
            Err(Error::Inconsistent(_))
        ));
        // alpha claiming no lifts in B while B has one
        let forged = Alpha { level: 1, fiber_size: 2, counts: alloc::vec![0] };
        assert!(matches!(
            step_measure(&FiberMeasure::uniform(), &forged, &q(0, 1), &b1),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn level_set_limit() {
        let s = sys(&[(0, 2), (0, 3)]);
        let l = ladder(&s);
        let tight = Limits { max_residues: 4, ..Limits::default() };
        assert!(level_set(&s, &l, 1, &tight).is_ok());
        assert!(matches!(level_set(&s, &l, 2, &tight), Err(Error::ResourceLimit { .. })));
    }
}
