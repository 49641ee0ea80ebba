use serde::Serialize;

use super::digamma::{digamma_error_bound, digamma_fraction};
use super::erdosian::ErdosianFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LValue {
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub value: f64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub error_bound: f64,
}

/// `L(1, f) = −(1/q) Σ_{a=1}^{q−1} f(a) ψ(a/q)` for balanced `f`.
pub fn l_one(f: &ErdosianFunction) -> Result<LValue> {
    if !f.is_balanced() {
        return Err(Error::Precondition(format!(
            "period sum is {}, so L(1, f) diverges",
            f.period_sum()
        )));
    }
    let q = f.q();
    let mut s = 0.0;
    for (i, &sign) in f.signs().iter().enumerate() {
        s += f64::from(sign) * digamma_fraction(i as u64 + 1, q)?;
    }
    Ok(LValue {
        value: -s / q as f64,
        error_bound: l_one_error_bound(q),
    })
}

/// Each ψ term carries at most `digamma_error_bound(q)`; the average over `q`
/// terms of weight ±1 keeps that bound, plus summation rounding.
pub fn l_one_error_bound(q: u64) -> f64 {
    digamma_error_bound(q) + 4.0 * q as f64 * f64::EPSILON * (1.0 + (q as f64).ln())
}

/// `Σ_{n ≤ terms} f(n)/n` by direct summation, for cross-checking.
pub fn partial_sum(f: &ErdosianFunction, terms: u64) -> f64 {
    (1..=terms).map(|n| f64::from(f.value(n)) / n as f64).sum()
}
