use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p"`, `"p/q"` or a JSON-style integer string.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parsed = if s.contains('/') {
        Rational::from_str(s).map_err(|_| alloc::format!("invalid rational `{s}`"))?
    } else {
        let n = BigInt::from_str(s).map_err(|_| alloc::format!("invalid integer `{s}`"))?;
        Rational::from_integer(n)
    };
    Ok(parsed)
}
