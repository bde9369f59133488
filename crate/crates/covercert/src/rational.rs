//! Exact rationals on the command line and in reports.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

/// Parses `n`, `n/d` or a decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: `{s}`");
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || !digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let whole: BigInt = format!("{}{frac}", if digits.is_empty() { "0" } else { digits })
            .parse()
            .map_err(|_| bad())?;
        let value = BigRational::new(whole, BigInt::from(10).pow(frac.len() as u32));
        return Ok(if negative { -value } else { value });
    }
    if s.split_once('/').is_some_and(|(_, d)| d.starts_with(['-', '+'])) {
        return Err(bad());
    }
    BigRational::from_str(s).map_err(|_| bad())
}

/// Always `num/den`, including integers.
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}
