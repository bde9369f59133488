//! Fixed-point logarithm and exponential over big integers, and decimal
//! rendering with a chosen number of significant digits.
//!
//! A fixed-point value `v` at precision `bits` stands for `v / 2^bits`.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::{Error, Result};

fn one(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `atanh(z)` for a fixed-point `|z| <= 1/3`.
fn atanh(z: &BigInt, bits: u32) -> BigInt {
    let z2 = (z * z) >> bits;
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1u32;
    loop {
        power = (&power * &z2) >> bits;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

pub(crate) fn ln2(bits: u32) -> BigInt {
    atanh(&(one(bits) / 3), bits) * 2
}

/// Natural logarithm of a positive fixed-point value.
pub(crate) fn ln(x: &BigInt, bits: u32) -> BigInt {
    assert!(x.is_positive(), "logarithm of a non-positive value");
    // x = m * 2^shift with m in [1, 2)
    let shift = x.bits() as i64 - 1 - i64::from(bits);
    let m = if shift >= 0 {
        x >> shift as usize
    } else {
        x << (-shift) as usize
    };
    let unit = one(bits);
    let z = ((&m - &unit) << bits) / (&m + &unit);
    atanh(&z, bits) * 2 + ln2(bits) * shift
}

/// `exp(r)` for a fixed-point `0 <= r < 3`.
fn exp_small(r: &BigInt, bits: u32) -> BigInt {
    const HALVINGS: u32 = 12;
    let reduced = r >> HALVINGS;
    let mut term = one(bits);
    let mut sum = term.clone();
    let mut k = 1u32;
    loop {
        term = ((&term * &reduced) >> bits) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..HALVINGS {
        sum = (&sum * &sum) >> bits;
    }
    sum
}

/// A positive decimal number with a fixed count of significant digits:
/// `d.ddd... * 10^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    digits: String,
    exponent: i64,
}

impl Decimal {
    /// Rounds `num / den` (half up) to `digits` significant digits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, digits: u32) -> Result<Self> {
        if digits == 0 {
            return Err(Error::InvalidInput("precision must be at least one digit".into()));
        }
        if num.is_negative() || !den.is_positive() {
            return Err(Error::InvalidInput("decimal rendering needs a nonnegative ratio".into()));
        }
        if num.is_zero() {
            return Ok(Self {
                digits: "0".repeat(digits as usize),
                exponent: 0,
            });
        }
        let ten = BigInt::from(10);
        let low = ten.clone().pow(digits - 1);
        let high = &low * &ten;
        let mut exponent = num.to_string().len() as i64 - den.to_string().len() as i64;
        loop {
            let shift = i64::from(digits) - 1 - exponent;
            let (n, d) = if shift >= 0 {
                (num * ten.clone().pow(shift as u64), den.clone())
            } else {
                (num.clone(), den * ten.clone().pow((-shift) as u64))
            };
            let (mut q, rem) = n.div_rem(&d);
            if q >= high {
                exponent += 1;
                continue;
            }
            if q < low {
                exponent -= 1;
                continue;
            }
            if rem * 2 >= d {
                q += 1;
                if q == high {
                    q = low.clone();
                    exponent += 1;
                }
            }
            return Ok(Self {
                digits: q.to_string(),
                exponent,
            });
        }
    }

    pub fn from_rational(value: &BigRational, digits: u32) -> Result<Self> {
        Self::from_ratio(value.numer(), value.denom(), digits)
    }

    /// The significant digits, without a decimal point.
    pub fn significand(&self) -> &str {
        &self.digits
    }

    /// Power of ten of the leading digit.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// The exact value of the rounded decimal.
    pub fn to_rational(&self) -> BigRational {
        let digits: BigInt = self.digits.parse().expect("digits are decimal");
        let scale = self.exponent - (self.digits.len() as i64 - 1);
        let ten = BigInt::from(10);
        if scale >= 0 {
            BigRational::from_integer(digits * ten.pow(scale as u64))
        } else {
            BigRational::new(digits, ten.pow((-scale) as u64))
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.digits.len() as i64;
        let e = self.exponent;
        if (-5..len).contains(&e) {
            if e < 0 {
                write!(f, "0.{}{}", "0".repeat((-e - 1) as usize), self.digits)
            } else {
                let (int, frac) = self.digits.split_at((e + 1) as usize);
                if frac.is_empty() {
                    f.write_str(int)
                } else {
                    write!(f, "{int}.{frac}")
                }
            }
        } else {
            let (lead, rest) = self.digits.split_at(1);
            if rest.is_empty() {
                write!(f, "{lead}e{e}")
            } else {
                write!(f, "{lead}.{rest}e{e}")
            }
        }
    }
}

/// Working precision in bits for `digits` decimal digits on a quantity whose
/// integer part needs up to `magnitude_bits` bits.
pub(crate) fn working_bits(digits: u32, magnitude_bits: u64) -> u32 {
    let decimal = (u64::from(digits) * 3322).div_ceil(1000);
    (decimal + magnitude_bits + 64) as u32
}

/// `exp(x)` for a fixed-point `x >= 0`, rendered with `digits` significant
/// digits.
pub(crate) fn exp_decimal(x: &BigInt, bits: u32, digits: u32) -> Result<Decimal> {
    if x.sign() == Sign::Minus {
        return Err(Error::InvalidInput("exponent must be nonnegative".into()));
    }
    let ln10 = ln(&(BigInt::from(10) << bits), bits);
    let (e10, r) = x.div_mod_floor(&ln10);
    let e10 = i64::try_from(e10).map_err(|_| Error::Overflow("decimal exponent exceeds i64"))?;
    let mantissa = exp_small(&r, bits);
    let d = Decimal::from_ratio(&mantissa, &one(bits), digits)?;
    Ok(Decimal {
        exponent: d.exponent + e10,
        digits: d.digits,
    })
}

/// A positive fixed-point value rendered with `digits` significant digits.
pub(crate) fn fixed_decimal(x: &BigInt, bits: u32, digits: u32) -> Result<Decimal> {
    Decimal::from_ratio(x, &one(bits), digits)
}
