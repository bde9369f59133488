//! Exact finite forms of the moment and smooth-number bounds, and the
//! minimum-modulus bound shapes evaluated to a chosen precision.
//!
//! The absolute constants in the bound shapes are unknown; they are always
//! supplied by the caller. Nothing on the certificate path depends on this
//! module's decimal output.

mod precise;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use precise::Decimal;

use crate::arith::primes_up_to;
use crate::distortion::PrimeLadder;
use crate::{CongruenceSystem, Error, Limits, Result};

/// `s * Σ_{1<=r<=ν_j} Σ_{g | Q_{j-1}, g p_j^r >= d1} 1/(g p_j^r)`.
///
/// When `δ_i = 0` for all `i < j` this bounds `E_{j-1}[α_j]` from above.
pub fn moment1_rhs(
    sys: &CongruenceSystem,
    ladder: &PrimeLadder,
    level: usize,
    d1: u64,
    limits: &Limits,
) -> Result<BigRational> {
    if level == 0 || level > ladder.len() {
        return Err(Error::InvalidInput(alloc::format!(
            "level {level} outside 1..={}",
            ladder.len()
        )));
    }
    let s = sys.multiplicity()?;
    let p = u128::from(ladder.prime(level));
    let divisors = ladder.factorization(level - 1).divisors(limits.max_divisors)?;
    let mut sum = BigRational::zero();
    let mut power = 1u128;
    for _ in 0..ladder.exponent(level) {
        power *= p;
        for &g in &divisors {
            let d = u128::from(g) * power;
            if d >= u128::from(d1) {
                sum += BigRational::new(1.into(), BigInt::from(d));
            }
        }
    }
    Ok(sum * BigInt::from(s))
}

/// Exact sum of `1/d` over `threshold < d <= cap` with every prime factor
/// of `d` at most `y`.
pub fn smooth_reciprocal_sum(y: u64, threshold: u64, cap: u64) -> Result<BigRational> {
    if y < 2 {
        return Err(Error::InvalidInput(alloc::format!("smoothness bound must be >= 2, got {y}")));
    }
    if threshold < 1 || threshold > cap {
        return Err(Error::InvalidInput(alloc::format!(
            "need 1 <= threshold <= cap, got threshold {threshold}, cap {cap}"
        )));
    }
    let primes = primes_up_to(y.min(cap));
    let smooth: Vec<u64> = (threshold + 1..=cap)
        .filter(|&d| is_smooth(d, y, &primes))
        .collect();
    if smooth.is_empty() {
        return Ok(BigRational::zero());
    }
    let (num, den) = reciprocal_sum(&smooth);
    Ok(BigRational::new(num, den))
}

/// Trial division by the primes up to `y`.
fn is_smooth(d: u64, y: u64, primes: &[u64]) -> bool {
    let mut rest = d;
    for &p in primes {
        if p.saturating_mul(p) > rest {
            break;
        }
        while rest % p == 0 {
            rest /= p;
        }
    }
    rest <= y
}

/// `Σ 1/d` as an unreduced fraction, by binary splitting.
fn reciprocal_sum(ds: &[u64]) -> (BigInt, BigInt) {
    match ds {
        [d] => (BigInt::from(1), BigInt::from(*d)),
        _ => {
            let (left, right) = ds.split_at(ds.len() / 2);
            let (a, b) = reciprocal_sum(left);
            let (c, d) = reciprocal_sum(right);
            (a * &d + c * &b, b * d)
        }
    }
}

fn check_positive(c: &BigRational, name: &str) -> Result<()> {
    if !c.is_positive() {
        return Err(Error::Domain(alloc::format!("{name} must be positive, got {c}")));
    }
    Ok(())
}

fn bit_len(n: &BigInt) -> u64 {
    n.bits()
}

/// `c * j^2 / log(j+1)` as a fixed-point value at the returned precision.
fn thm1_exponent(j: u64, c: &BigRational, digits: u32) -> (BigInt, u32) {
    let top = c.numer() * BigInt::from(j) * BigInt::from(j);
    let magnitude = (bit_len(&top) + 2).saturating_sub(bit_len(c.denom()));
    let bits = precise::working_bits(digits, magnitude);
    let log = precise::ln(&(BigInt::from(j + 1) << bits), bits);
    ((top << (2 * bits as usize)) / (c.denom() * log), bits)
}

/// `c * log^2(s+1) / log log(s+2)` at the returned precision.
fn thm2_exponent(s: u64, c: &BigRational, digits: u32) -> (BigInt, u32) {
    // log^2(s+1) / log log(s+2) < 11 * bits(s+1)^2
    let shape_bits = 2 * (64 - (s + 1).leading_zeros()) as u64 + 4;
    let magnitude = (bit_len(c.numer()) + shape_bits + 1).saturating_sub(bit_len(c.denom()));
    let bits = precise::working_bits(digits, magnitude);
    let log1 = precise::ln(&(BigInt::from(s + 1) << bits), bits);
    let log2 = precise::ln(&precise::ln(&(BigInt::from(s + 2) << bits), bits), bits);
    let num = c.numer() * &log1 * &log1;
    (num / (c.denom() * log2), bits)
}

/// `exp(c j^2 / log(j+1))` to `digits` significant digits.
pub fn thm1_bound(j: u64, c: &BigRational, digits: u32) -> Result<Decimal> {
    if j < 1 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    check_positive(c, "c")?;
    let (x, bits) = thm1_exponent(j, c, digits);
    precise::exp_decimal(&x, bits, digits)
}

/// `exp(c log^2(s+1) / log log(s+2))` to `digits` significant digits.
pub fn thm2_bound(s: u64, c: &BigRational, digits: u32) -> Result<Decimal> {
    if s < 1 {
        return Err(Error::Domain("s must be at least 1".into()));
    }
    check_positive(c, "c")?;
    let (x, bits) = thm2_exponent(s, c, digits);
    precise::exp_decimal(&x, bits, digits)
}

/// The constants of the minimum-modulus argument: `c` in the bound shape and
/// `C` in the smoothness threshold `y = C s^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub c: BigRational,
    pub schedule_constant: BigRational,
}

impl BoundParams {
    pub fn new(c: BigRational, schedule_constant: BigRational) -> Result<Self> {
        check_positive(&c, "c")?;
        check_positive(&schedule_constant, "C")?;
        Ok(Self { c, schedule_constant })
    }

    /// `y = C s^3`, exactly.
    pub fn y(&self, s: u64) -> BigRational {
        let s = BigInt::from(s);
        &self.schedule_constant * BigRational::from_integer(&s * &s * &s)
    }

    /// `log x = c log^2(s+1) / log log(s+2)`.
    pub fn log_x(&self, s: u64, digits: u32) -> Result<Decimal> {
        if s < 1 {
            return Err(Error::Domain("s must be at least 1".into()));
        }
        let (x, bits) = thm2_exponent(s, &self.c, digits);
        precise::fixed_decimal(&x, bits, digits)
    }

    /// `u = log x / log y`; needs `y >= 2`.
    pub fn u(&self, s: u64, digits: u32) -> Result<Decimal> {
        if s < 1 {
            return Err(Error::Domain("s must be at least 1".into()));
        }
        let y = self.y(s);
        if y < BigRational::from_integer(2.into()) {
            return Err(Error::Domain(alloc::format!("u needs y = C s^3 >= 2, got {y}")));
        }
        let (x, bits) = thm2_exponent(s, &self.c, digits + 10);
        let y_fixed = (y.numer() << bits as usize) / y.denom();
        let log_y = precise::ln(&y_fixed, bits);
        precise::fixed_decimal(&((x << bits as usize) / log_y), bits, digits)
    }
}

/// `M2 / (s^2 (log p)^6 / p^2)`, the size of a second moment relative to the
/// shape of its asymptotic bound. A diagnostic only.
pub fn moment2_shape_ratio(m2: &BigRational, s: u64, p: u64, digits: u32) -> Result<Decimal> {
    if p < 2 || s < 1 {
        return Err(Error::InvalidInput("need a prime p >= 2 and s >= 1".into()));
    }
    let bits = precise::working_bits(digits, 64);
    let log = precise::ln(&(BigInt::from(p) << bits), bits);
    let log6 = (0..5).fold(log.clone(), |acc, _| (acc * &log) >> bits as usize);
    let p2 = BigInt::from(p) * BigInt::from(p);
    let s2 = BigInt::from(s) * BigInt::from(s);
    let num = m2.numer() * p2 << bits as usize;
    let den = m2.denom() * s2 * log6;
    Decimal::from_ratio(&num, &den, digits)
}
