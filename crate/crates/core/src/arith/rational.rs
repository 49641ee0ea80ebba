//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type ExactRational = BigRational;

pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ratio_u(num: u64, den: u64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders as `"num/den"`, including integers (`"2/1"`).
pub fn to_fraction_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses a `"num/den"` or bare integer string.
pub fn parse_fraction(s: &str) -> Option<ExactRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn to_f64(r: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `serialize_with` adapter for a single rational.
pub fn serialize<S: Serializer>(r: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_fraction_string(r))
}
