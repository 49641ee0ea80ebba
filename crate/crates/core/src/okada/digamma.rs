//! Digamma at rational points via Gauss's finite closed form.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ψ(a/q) for `1 ≤ a < q`:
///
/// ψ(a/q) = −γ − ln(2q) − (π/2)·cot(πa/q) + 2 Σ_{n=1}^{⌊(q−1)/2⌋} cos(2πna/q)·ln sin(πn/q)
pub fn digamma_fraction(a: u64, q: u64) -> Result<f64> {
    if a == 0 || a >= q {
        return Err(Error::Domain(format!(
            "digamma_fraction needs 1 ≤ a < q, got a = {a}, q = {q}"
        )));
    }
    let qf = q as f64;
    let mut s = 0.0;
    for n in 1..=(q - 1) / 2 {
        // reduce n·a mod q before scaling so the cosine argument stays in [0, 2π)
        let r = ((u128::from(n) * u128::from(a)) % u128::from(q)) as f64;
        s += (2.0 * PI * r / qf).cos() * (PI * n as f64 / qf).sin().ln();
    }
    let cot = 1.0 / (PI * a as f64 / qf).tan();
    Ok(-EULER_GAMMA - (2.0 * qf).ln() - 0.5 * PI * cot + 2.0 * s)
}

/// Absolute error bound for [`digamma_fraction`] at modulus `q`.
///
/// Rounding accumulates over `q/2` terms of size at most `ln q`; the constant
/// leaves a wide margin over the error observed against a 1e-15 series oracle.
pub fn digamma_error_bound(q: u64) -> f64 {
    let qf = q as f64;
    1e-13 + 64.0 * qf * f64::EPSILON * (1.0 + qf.ln())
}

/// ψ(a/q) for all `1 ≤ a < q`, index `a − 1`.
pub fn digamma_table(q: u64) -> Vec<f64> {
    (1..q)
        .map(|a| digamma_fraction(a, q).expect("1 ≤ a < q"))
        .collect()
}
