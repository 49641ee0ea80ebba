use serde::Serialize;

use super::mertens::mertens_limit;
use super::moments::DivisorTotientTable;
use crate::arith::for_each_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WirsingCheck {
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub alpha: f64,
    pub x: u64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub empirical: f64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub predicted: f64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub ratio: f64,
}

/// `log(1 + Σ_{k ≥ 1} F(p^k)^α / p^k)`, summed until the terms stop mattering.
fn log_local_factor(p: f64, alpha: f64) -> f64 {
    let mut s = 0.0;
    let mut f = 1.0;
    let mut inv_phi = 1.0 / (p - 1.0);
    let mut inv_pk = 1.0;
    for _ in 0..200 {
        f += inv_phi;
        inv_phi /= p;
        inv_pk /= p;
        let term = f.powf(alpha) * inv_pk;
        s += term;
        if term < 1e-20 * s {
            break;
        }
    }
    s.ln_1p()
}

/// Compares `Σ_{q ≤ X odd} f_α(q)` with the mean-value prediction
/// `X e^{−γ}/log X · Π_{3 ≤ p ≤ X} (1 + Σ_k f_α(p^k)/p^k)` (slope τ = 1, so Γ(τ) = 1).
pub fn wirsing_check(alpha: f64, max: u64) -> Result<WirsingCheck> {
    if !(0.0..=4.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "Wirsing check needs 0 ≤ α ≤ 4, got {alpha}"
        )));
    }
    if max < 10_000 {
        return Err(Error::Domain(format!(
            "Wirsing check needs X ≥ 10^4, got {max}"
        )));
    }
    let table = DivisorTotientTable::new(max)?;
    let empirical: f64 = table.iter().map(|(_, f)| f.powf(alpha)).sum();
    let mut log_prod = 0.0;
    for_each_prime(max, |p| {
        if p > 2 {
            log_prod += log_local_factor(p as f64, alpha);
        }
    });
    let x = max as f64;
    let predicted = x * mertens_limit() / x.ln() * log_prod.exp();
    Ok(WirsingCheck {
        alpha,
        x: max,
        empirical,
        predicted,
        ratio: empirical / predicted,
    })
}
