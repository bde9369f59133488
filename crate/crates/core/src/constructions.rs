//! Explicit covering systems and the shift expansion.

use alloc::vec::Vec;

use crate::{CongruenceSystem, Error, Limits, ResidueClass, Result};

/// The minimal covering system with `j >= 5` distinct moduli
/// `2 < 4 < ... < 2^(j-4) < 3*2^(j-5) < 2^(j-3) < 3*2^(j-4) < 3*2^(j-3)`.
///
/// The classes are `2^(i-1) mod 2^i` for `1 <= i <= j-3`, followed by
/// `A_k = (k mod 3) ∩ (0 mod 2^(j-5+k))` for `k = 0, 1, 2`, each stored as a
/// single class modulo `3*2^(j-5+k)`.
pub fn construct_theorem_lb(j: u32) -> Result<CongruenceSystem> {
    if j < 5 {
        return Err(Error::Domain(alloc::format!(
            "the construction needs j >= 5, got {j}"
        )));
    }
    // the largest modulus is 3 * 2^(j-3)
    if j - 3 > 61 {
        return Err(Error::Overflow("moduli of the construction exceed u64"));
    }
    let mut classes = Vec::with_capacity(j as usize);
    for i in 1..=j - 3 {
        classes.push(ResidueClass::from_reduced(1 << (i - 1), 1 << i)?);
    }
    for k in 0..3u32 {
        let mod3 = ResidueClass::from_reduced(u64::from(k), 3)?;
        let power = ResidueClass::from_reduced(0, 1 << (j - 5 + k))?;
        let a_k = mod3
            .intersect(&power)?
            .expect("3 and a power of two are coprime");
        classes.push(a_k);
    }
    Ok(CongruenceSystem::new(classes))
}

/// Input to [`shift_expand`]: a source system sorted by `(modulus, residue)`
/// and the index `ell` (1-based) of the first class kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftExpansionSpec {
    ell: usize,
    source: CongruenceSystem,
}

impl ShiftExpansionSpec {
    /// Sorts `source` and checks `1 <= ell <= n`.
    pub fn new(source: &CongruenceSystem, ell: usize) -> Result<Self> {
        let n = source.len();
        if ell < 1 || ell > n {
            return Err(Error::Domain(alloc::format!(
                "ell must lie in 1..={n}, got {ell}"
            )));
        }
        if ell > 64 {
            return Err(Error::Overflow("2^(ell-1) shifts exceed u64"));
        }
        Ok(Self {
            ell,
            source: source.sorted(),
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn source(&self) -> &CongruenceSystem {
        &self.source
    }

    /// Number of shifts `2^(ell-1)` applied to each surviving class.
    pub fn shift_count(&self) -> u64 {
        1u64 << (self.ell - 1)
    }

    /// Number of classes in the expansion.
    pub fn output_len(&self) -> Option<u64> {
        let survivors = (self.source.len() - self.ell + 1) as u64;
        survivors.checked_mul(self.shift_count())
    }
}

/// The multiset `{ (r_j - h) mod q_j : ell <= j <= n, 0 <= h < 2^(ell-1) }`
/// in `(j, h)` order.
///
/// When the source is a minimal covering system the result covers the
/// integers: every `m` has a shift `m + h` that the first `ell - 1` classes
/// miss, and a later class covers it.
pub fn shift_expand(spec: &ShiftExpansionSpec, limits: &Limits) -> Result<CongruenceSystem> {
    let len = spec
        .output_len()
        .filter(|&len| len <= limits.max_residues)
        .ok_or_else(|| {
            Error::resource(
                "shift expansion output",
                alloc::format!(
                    "{} * 2^{}",
                    spec.source.len() - spec.ell + 1,
                    spec.ell - 1
                ),
                limits.max_residues,
            )
        })?;
    let mut classes = Vec::with_capacity(len as usize);
    for class in &spec.source.classes()[spec.ell - 1..] {
        for h in 0..spec.shift_count() {
            classes.push(class.shifted_down(h));
        }
    }
    Ok(CongruenceSystem::new(classes))
}
