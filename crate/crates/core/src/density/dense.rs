use serde::Serialize;

use crate::arith::for_each_prime;
use crate::error::{Error, Result};

pub const DEFAULT_PRIME_CAP: u64 = 10_000_000;

/// An initial run of primes `≡ 1 (mod 4)` whose product `q` forces
/// `Σ_{d | q} 1/φ(d) ≥ Π (1 + 1/(p − 1))` above a target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseSegment {
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub target: f64,
    pub primes: Vec<u64>,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub product: f64,
    /// `log10` of the product of the primes; the integer itself is not formed.
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub log10_q: f64,
}

pub fn dense_counterexample_primes(target: f64, prime_cap: u64) -> Result<DenseSegment> {
    if !(1.0..=4.0).contains(&target) {
        return Err(Error::Domain(format!(
            "target must lie in [1, 4], got {target}"
        )));
    }
    let mut primes = Vec::new();
    let mut product = 1.0;
    let mut log10_q = 0.0;
    let mut done = product >= target;
    if !done {
        // for_each_prime has no early exit; the cap bounds the work
        for_each_prime(prime_cap, |p| {
            if done || p % 4 != 1 {
                return;
            }
            let pf = p as f64;
            product *= pf / (pf - 1.0);
            log10_q += pf.log10();
            primes.push(p);
            done = product >= target;
        });
    }
    if !done {
        return Err(Error::Resource(format!(
            "primes ≡ 1 (mod 4) up to {prime_cap} reach product {product:.6}, short of {target}"
        )));
    }
    Ok(DenseSegment {
        target,
        primes,
        product,
        log10_q,
    })
}
