use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{DeltaSchedule, FiberMeasure, PrimeLadder};
use crate::{Error, Limits, Result};

/// A progression `residue + modulus*Z` whose mass exceeds its bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApViolation {
    pub modulus: u64,
    pub residue: u64,
    pub mass: BigRational,
    pub bound: BigRational,
}

/// Checks `P(a + gZ) <= Π_{p_i | g} (1-δ_i)^{-1} / g` for every divisor `g`
/// of `Q_j` and every residue `a mod g`, where `P` is the measure at level
/// `j`. Returns the violations, which should always be empty.
pub fn ap_mass_bound_check(
    measure: &FiberMeasure,
    schedule: &DeltaSchedule,
    ladder: &PrimeLadder,
    limits: &Limits,
) -> Result<Vec<ApViolation>> {
    let level = measure.level();
    let top = ladder.modulus(level);
    if measure.modulus() != top {
        return Err(Error::Inconsistent(alloc::format!(
            "measure has {} fibers but Q_{level} = {top}",
            measure.modulus()
        )));
    }
    let factorization = ladder.factorization(level);
    let divisors = factorization.divisors(limits.max_divisors)?;

    // work with numerators over one common denominator
    let denom = measure
        .masses()
        .iter()
        .fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
    let numerators: Vec<BigInt> = measure
        .masses()
        .iter()
        .map(|m| m.numer() * (&denom / m.denom()))
        .collect();

    // fold masses from each divisor down to the next smaller one
    let mut folds: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    folds.insert(top, numerators);
    let mut violations = Vec::new();
    for &g in divisors.iter().rev() {
        if g != top {
            let p = factorization
                .factors()
                .iter()
                .map(|&(p, _)| p)
                .find(|&p| top % (g * p) == 0)
                .expect("a proper divisor has a prime to grow by");
            let finer = &folds[&(g * p)];
            let mut coarse = alloc::vec![BigInt::zero(); g as usize];
            for (z, m) in finer.iter().enumerate() {
                coarse[z % g as usize] += m;
            }
            folds.insert(g, coarse);
        }

        let mut bound = BigRational::new(BigInt::one(), BigInt::from(g));
        for (i, &(p, _)) in factorization.factors().iter().enumerate() {
            if g % p == 0 {
                bound /= BigRational::one() - schedule.delta(i + 1);
            }
        }
        // mass <= bound  <=>  num * bound.denom <= denom * bound.numer
        let limit = &denom * bound.numer();
        for (a, num) in folds[&g].iter().enumerate() {
            if num * bound.denom() > limit {
                violations.push(ApViolation {
                    modulus: g,
                    residue: a as u64,
                    mass: BigRational::new(num.clone(), denom.clone()),
                    bound: bound.clone(),
                });
            }
        }
    }
    Ok(violations)
}
