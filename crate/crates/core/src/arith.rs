//! Integer utilities: gcd/lcm, modular inverses and trial-division
//! factorization.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple, `None` on `u64` overflow.
pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. `m` must be positive.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as u64)
}

/// Primes up to and including `bound`, by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = alloc::vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut k = i.saturating_mul(i);
            while k <= n {
                composite[k] = true;
                k += i;
            }
        }
    }
    primes
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. The empty factorization is the number 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factorizes `m` by trial division.
    pub fn of(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("cannot factorize 0".into()));
        }
        let mut factors = Vec::new();
        let mut n = m;
        let mut push = |p: u64, n: &mut u64| {
            let mut e = 0;
            while *n % p == 0 {
                *n /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        push(2, &mut n);
        push(3, &mut n);
        let mut p = 5u64;
        while p.saturating_mul(p) <= n {
            push(p, &mut n);
            push(p + 2, &mut n);
            p += 6;
        }
        if n > 1 {
            factors.push((n, 1));
        }
        Ok(Self { factors })
    }

    /// Builds a factorization from pairs; primes must be strictly increasing
    /// and exponents positive. Primality is not re-checked.
    pub fn from_pairs(factors: Vec<(u64, u32)>) -> Result<Self> {
        let increasing = factors.windows(2).all(|w| w[0].0 < w[1].0);
        if !increasing || factors.iter().any(|&(p, e)| p < 2 || e == 0) {
            return Err(Error::InvalidInput(
                "factorization pairs must have increasing primes and positive exponents".into(),
            ));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Largest prime factor, with the convention `P^+(1) = 1`.
    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |&(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// The integer itself, or `None` if it does not fit in `u64`.
    pub fn value(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Factorization of the lcm of `self` and `other`.
    pub fn lcm(&self, other: &Factorization) -> Factorization {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    out.push((p, e.max(f)));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    out.push((p, e));
                    i += 1;
                }
                (Some(_), Some(&(q, f))) => {
                    out.push((q, f));
                    j += 1;
                }
                (Some(&pe), None) => {
                    out.push(pe);
                    i += 1;
                }
                (None, Some(&qf)) => {
                    out.push(qf);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Factorization { factors: out }
    }

    /// Number of divisors, saturating at `u64::MAX`.
    pub fn divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(_, e)| acc.saturating_mul(u64::from(e) + 1))
    }

    /// All divisors in increasing order. Fails if there are more than `limit`
    /// of them or the number itself overflows `u64`.
    pub fn divisors(&self, limit: u64) -> Result<Vec<u64>> {
        let count = self.divisor_count();
        if count > limit {
            return Err(Error::resource("divisor enumeration", count, limit));
        }
        if self.value().is_none() {
            return Err(Error::Overflow("number does not fit in u64"));
        }
        let mut divisors = alloc::vec![1u64];
        for &(p, e) in &self.factors {
            let len = divisors.len();
            let mut power = 1u64;
            for _ in 0..e {
                power *= p;
                for k in 0..len {
                    divisors.push(divisors[k] * power);
                }
            }
        }
        divisors.sort_unstable();
        Ok(divisors)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, &(p, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `m`; see [`Factorization::of`].
pub fn factorize(m: u64) -> Result<Factorization> {
    Factorization::of(m)
}
