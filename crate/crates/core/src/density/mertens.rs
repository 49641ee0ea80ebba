use crate::arith::for_each_prime;
use crate::error::{Error, Result};
use crate::okada::digamma::EULER_GAMMA;

/// `e^{−γ}`, the limit of [`mertens_ratio`].
pub fn mertens_limit() -> f64 {
    (-EULER_GAMMA).exp()
}

/// `log X · Π_{p ≤ X} (1 − 1/p)`, accumulated in log space.
pub fn mertens_ratio(max: u64) -> Result<f64> {
    if max < 3 {
        return Err(Error::Domain(format!(
            "Mertens ratio needs X ≥ 3, got {max}"
        )));
    }
    let mut log_prod = 0.0;
    for_each_prime(max, |p| log_prod += (-1.0 / p as f64).ln_1p());
    Ok((max as f64).ln() * log_prod.exp())
}
