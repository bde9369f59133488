//! Finite systems of congruences and their brute-force decision procedures.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::Factorization;
use crate::{Error, ResidueClass, Result};

/// Caps on every enumeration performed by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest residue space `Z/QZ` (or level modulus) that may be enumerated.
    pub max_residues: u64,
    /// Largest interval `{1, ..., 2^n}` that may be scanned.
    pub max_interval: u64,
    /// Largest number of divisors that may be listed.
    pub max_divisors: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_residues: 10_000_000,
            max_interval: 1 << 24,
            max_divisors: 1_000_000,
        }
    }
}

/// Outcome of the exhaustive residue check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub covers: bool,
    /// Smallest nonnegative residue mod `Q` that no class contains.
    pub witness: Option<u64>,
    pub uncovered_count: u64,
    /// The modulus `Q` that was enumerated.
    pub modulus: u64,
}

/// Result of the single-removal minimality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    /// Indices whose removal leaves a covering system.
    pub redundant: Vec<usize>,
}

/// An ordered multiset of residue classes.
///
/// Duplicate classes are kept; see [`CongruenceSystem::dedup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSystem {
    classes: Vec<ResidueClass>,
    lcm: Factorization,
}

impl CongruenceSystem {
    pub fn new(classes: Vec<ResidueClass>) -> Self {
        let mut cache: BTreeMap<u64, Factorization> = BTreeMap::new();
        let mut lcm = Factorization::one();
        for c in &classes {
            let f = cache
                .entry(c.modulus())
                .or_insert_with(|| Factorization::of(c.modulus()).expect("moduli are positive"));
            lcm = lcm.lcm(f);
        }
        Self { classes, lcm }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn classes(&self) -> &[ResidueClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Factorization of `Q`, the lcm of all moduli.
    pub fn lcm_factorization(&self) -> &Factorization {
        &self.lcm
    }

    /// `Q` as an integer, if it fits in `u64`.
    pub fn lcm_value(&self) -> Option<u64> {
        self.lcm.value()
    }

    pub fn min_modulus(&self) -> Option<u64> {
        self.classes.iter().map(|c| c.modulus()).min()
    }

    /// The largest number of classes sharing one modulus, duplicates counted.
    pub fn multiplicity(&self) -> Result<usize> {
        if self.classes.is_empty() {
            return Err(Error::InvalidInput("multiplicity of an empty system".into()));
        }
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for c in &self.classes {
            *counts.entry(c.modulus()).or_default() += 1;
        }
        Ok(counts.into_values().max().unwrap_or(0))
    }

    /// Multiplicity after collapsing identical classes.
    pub fn distinct_multiplicity(&self) -> Result<usize> {
        self.dedup().multiplicity()
    }

    /// Removes repeated classes, keeping first occurrences in order.
    pub fn dedup(&self) -> Self {
        let mut seen = alloc::collections::BTreeSet::new();
        let classes = self.classes.iter().copied().filter(|c| seen.insert(*c)).collect();
        Self {
            classes,
            lcm: self.lcm.clone(),
        }
    }

    /// Classes sorted by `(modulus, residue)`.
    pub fn sorted(&self) -> Self {
        let mut classes = self.classes.clone();
        classes.sort();
        Self {
            classes,
            lcm: self.lcm.clone(),
        }
    }

    /// The system with the class at `index` removed.
    pub fn without(&self, index: usize) -> Self {
        let mut classes = self.classes.clone();
        classes.remove(index);
        Self::new(classes)
    }

    fn residue_space(&self, limits: &Limits) -> Result<u64> {
        match self.lcm_value() {
            Some(q) if q <= limits.max_residues => Ok(q),
            _ => Err(Error::resource("residue enumeration mod Q", &self.lcm, limits.max_residues)),
        }
    }

    /// Number of classes containing each residue mod `Q`, saturating at 2.
    fn cover_counts(&self, q: u64) -> Vec<u8> {
        let mut counts = alloc::vec![0u8; q as usize];
        for c in &self.classes {
            let mut x = c.residue() as usize;
            let step = c.modulus() as usize;
            while x < counts.len() {
                counts[x] = counts[x].saturating_add(1).min(2);
                x += step;
            }
        }
        counts
    }

    /// Decides coverage by checking every residue mod `Q`.
    pub fn covers_oracle(&self, limits: &Limits) -> Result<CoverageReport> {
        let q = self.residue_space(limits)?;
        let counts = self.cover_counts(q);
        let witness = counts.iter().position(|&c| c == 0).map(|x| x as u64);
        let uncovered_count = counts.iter().filter(|&&c| c == 0).count() as u64;
        Ok(CoverageReport {
            covers: uncovered_count == 0,
            witness,
            uncovered_count,
            modulus: q,
        })
    }

    /// Decides coverage by scanning `{1, ..., 2^n}` for `n` classes.
    ///
    /// A family of `n` progressions that misses some integer already misses
    /// one in any interval of length `2^n`, so this agrees with
    /// [`covers_oracle`](Self::covers_oracle).
    pub fn covers_interval(&self, limits: &Limits) -> Result<bool> {
        Ok(self.first_uncovered_in_interval(limits)?.is_none())
    }

    /// Smallest integer in `{1, ..., 2^n}` not covered, if any.
    pub fn first_uncovered_in_interval(&self, limits: &Limits) -> Result<Option<u64>> {
        let n = self.classes.len();
        let length = u32::try_from(n)
            .ok()
            .and_then(|n| 1u64.checked_shl(n).filter(|_| n < 64))
            .filter(|&len| len <= limits.max_interval)
            .ok_or_else(|| {
                Error::resource("interval scan of length 2^n", alloc::format!("2^{n}"), limits.max_interval)
            })?;
        let uncovered = (1..=length).find(|&x| {
            !self
                .classes
                .iter()
                .any(|c| x % c.modulus() == c.residue())
        });
        Ok(uncovered)
    }

    /// Single-removal minimality test for a covering system.
    ///
    /// Dropping more classes from a non-covering subfamily cannot restore
    /// coverage, so the system is minimal exactly when no single class is
    /// redundant.
    pub fn is_minimal(&self, limits: &Limits) -> Result<Minimality> {
        let q = self.residue_space(limits)?;
        let counts = self.cover_counts(q);
        if let Some(x) = counts.iter().position(|&c| c == 0) {
            return Err(Error::Domain(alloc::format!(
                "minimality is only defined for covering systems; residue {x} mod {q} is uncovered"
            )));
        }
        let redundant: Vec<usize> = self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                (c.residue()..q)
                    .step_by(c.modulus() as usize)
                    .all(|x| counts[x as usize] >= 2)
            })
            .map(|(i, _)| i)
            .collect();
        Ok(Minimality {
            minimal: redundant.is_empty(),
            redundant,
        })
    }

    /// Proportion of residues mod `Q` left uncovered.
    pub fn density_uncovered(&self, limits: &Limits) -> Result<BigRational> {
        let report = self.covers_oracle(limits)?;
        Ok(BigRational::new(
            BigInt::from(report.uncovered_count),
            BigInt::from(report.modulus),
        ))
    }
}

impl FromIterator<ResidueClass> for CongruenceSystem {
    fn from_iter<I: IntoIterator<Item = ResidueClass>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for CongruenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}
