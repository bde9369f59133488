use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::PrimeLadder;
use crate::{Error, Result};

/// Parameters `δ_1, ..., δ_J`, each in `[0, 1/2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSchedule {
    deltas: Vec<BigRational>,
}

impl DeltaSchedule {
    pub fn new(deltas: Vec<BigRational>) -> Result<Self> {
        let half = BigRational::new(1.into(), 2.into());
        if let Some((i, d)) = deltas
            .iter()
            .enumerate()
            .find(|(_, d)| d.is_negative() || **d > half)
        {
            return Err(Error::Domain(alloc::format!(
                "delta_{} = {d} lies outside [0, 1/2]",
                i + 1
            )));
        }
        Ok(Self { deltas })
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            deltas: alloc::vec![BigRational::zero(); len],
        }
    }

    pub fn halves(len: usize) -> Self {
        Self {
            deltas: alloc::vec![BigRational::new(1.into(), 2.into()); len],
        }
    }

    /// `δ_i = 0` for primes `p_i <= y = C s^3` and `δ_i = 1/2` above.
    pub fn threshold_rule(s: u64, c: &BigRational, ladder: &PrimeLadder) -> Result<Self> {
        if s == 0 {
            return Err(Error::Domain("multiplicity must be at least 1".into()));
        }
        if !c.is_positive() {
            return Err(Error::Domain(alloc::format!(
                "schedule constant must be positive, got {c}"
            )));
        }
        let s = BigInt::from(s);
        let y = c * BigRational::from_integer(&s * &s * &s);
        let deltas = ladder
            .primes()
            .iter()
            .map(|&p| {
                if BigRational::from_integer(BigInt::from(p)) <= y {
                    BigRational::zero()
                } else {
                    BigRational::new(1.into(), 2.into())
                }
            })
            .collect();
        Ok(Self { deltas })
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.deltas
    }

    /// `δ_level`, 1-based.
    pub fn delta(&self, level: usize) -> &BigRational {
        &self.deltas[level - 1]
    }

    /// Whether `δ_i = 0` for every `i < level`.
    pub fn zero_before(&self, level: usize) -> bool {
        self.deltas[..level - 1].iter().all(Zero::is_zero)
    }
}

/// The threshold schedule for multiplicity `s` and constant `c`; see
/// [`DeltaSchedule::threshold_rule`].
pub fn default_delta_schedule(s: u64, c: &BigRational, ladder: &PrimeLadder) -> Result<DeltaSchedule> {
    DeltaSchedule::threshold_rule(s, c, ladder)
}
