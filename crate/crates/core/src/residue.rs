use core::fmt;

use crate::arith::{gcd, mod_inverse};
use crate::{Error, Result};

/// A residue class `residue mod modulus` with `0 <= residue < modulus`.
///
/// Ordering is by modulus, then residue. Modulus 1 is the class of all
/// integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueClass {
    modulus: u64,
    residue: u64,
}

impl ResidueClass {
    /// The class of `a` modulo `d`. `a` may be negative or larger than `d`.
    pub fn new(a: i128, d: i128) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidModulus(d));
        }
        let modulus = u64::try_from(d).map_err(|_| Error::Overflow("modulus exceeds u64"))?;
        Ok(Self {
            modulus,
            residue: a.rem_euclid(d) as u64,
        })
    }

    /// Same as [`ResidueClass::new`] for values already known to be in range.
    pub fn from_reduced(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        Ok(Self {
            modulus,
            residue: residue % modulus,
        })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, n: i128) -> bool {
        n.rem_euclid(i128::from(self.modulus)) as u64 == self.residue
    }

    /// `(residue - h) mod modulus`.
    pub fn shifted_down(&self, h: u64) -> Self {
        let h = h % self.modulus;
        let residue = if self.residue >= h {
            self.residue - h
        } else {
            self.modulus - (h - self.residue)
        };
        Self {
            modulus: self.modulus,
            residue,
        }
    }

    /// Intersection of two classes by the Chinese remainder theorem.
    ///
    /// Returns `Ok(None)` when the residues disagree modulo the gcd of the
    /// moduli; otherwise the unique class modulo the lcm contained in both.
    /// Fails only if the lcm overflows `u64`.
    pub fn intersect(&self, other: &ResidueClass) -> Result<Option<ResidueClass>> {
        let (m1, r1) = (self.modulus, self.residue);
        let (m2, r2) = (other.modulus, other.residue);
        let g = gcd(m1, m2);
        if r1 % g != r2 % g {
            return Ok(None);
        }
        let m2g = m2 / g;
        let modulus = m1
            .checked_mul(m2g)
            .ok_or(Error::Overflow("lcm of moduli exceeds u64"))?;
        // x = r1 + m1 * t with t = (r2 - r1)/g * (m1/g)^{-1} mod m2/g
        let inv = mod_inverse((m1 / g) % m2g, m2g).expect("m1/g and m2/g are coprime");
        let diff = (i128::from(r2) - i128::from(r1)) / i128::from(g);
        let diff = diff.rem_euclid(i128::from(m2g)) as u128;
        let t = (diff * u128::from(inv)) % u128::from(m2g);
        let x = (u128::from(r1) + u128::from(m1) * t) % u128::from(modulus);
        Ok(Some(ResidueClass {
            modulus,
            residue: x as u64,
        }))
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}
