use alloc::vec::Vec;

use crate::arith::Factorization;
use crate::{Error, Result};

/// The primes `p_1 < ... < p_J` of `Q` with exponents `ν_j` and the partial
/// products `Q_0 = 1, Q_j = Q_{j-1} * p_j^ν_j`.
///
/// Levels are 1-based: `prime(j)` is `p_j` for `1 <= j <= J`, while
/// `modulus(j)` accepts `0 <= j <= J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeLadder {
    primes: Vec<u64>,
    exponents: Vec<u32>,
    partials: Vec<u64>,
}

impl PrimeLadder {
    pub fn new(q: &Factorization) -> Result<Self> {
        let mut partials = Vec::with_capacity(q.omega() + 1);
        partials.push(1u64);
        let mut acc = 1u64;
        for &(p, e) in q.factors() {
            acc = p
                .checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(Error::Overflow("partial product Q_j exceeds u64"))?;
            partials.push(acc);
        }
        Ok(Self {
            primes: q.factors().iter().map(|&(p, _)| p).collect(),
            exponents: q.factors().iter().map(|&(_, e)| e).collect(),
            partials,
        })
    }

    /// `J`, the number of distinct primes.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn partials(&self) -> &[u64] {
        &self.partials
    }

    pub fn prime(&self, level: usize) -> u64 {
        self.primes[level - 1]
    }

    pub fn exponent(&self, level: usize) -> u32 {
        self.exponents[level - 1]
    }

    /// `Q_level`.
    pub fn modulus(&self, level: usize) -> u64 {
        self.partials[level]
    }

    /// `p_level^ν_level`, the number of lifts of a residue mod `Q_{level-1}`.
    pub fn fiber_size(&self, level: usize) -> u64 {
        self.partials[level] / self.partials[level - 1]
    }

    /// The level `j` with `p_j = p`.
    pub fn level_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    /// Factorization of `Q_level`.
    pub fn factorization(&self, level: usize) -> Factorization {
        let pairs = self.primes[..level]
            .iter()
            .copied()
            .zip(self.exponents[..level].iter().copied())
            .collect();
        Factorization::from_pairs(pairs).expect("ladder primes are increasing")
    }
}
