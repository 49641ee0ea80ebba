use thiserror::Error;

/// Errors raised by the arithmetic, certification and density routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value is outside the range covered by a precomputed table.
    #[error("{value} is outside the sieve range [2, {limit}]")]
    OutOfRange { value: u64, limit: u64 },

    /// The request would exceed a configured resource budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A brute-force value fell inside the ambiguity band around zero.
    #[error(
        "escalation: |L(1,f)| = {abs_value:e} for signs {signs} is not above threshold {threshold:e} + error bound {error_bound:e}"
    )]
    Escalation {
        q: u64,
        signs: String,
        abs_value: f64,
        threshold: f64,
        error_bound: f64,
    },

    /// A scalar search saw a sampled curve that is not unimodal.
    #[error("bracketing failure: sampled curve is not unimodal: {samples:?}")]
    NotUnimodal { samples: Vec<(f64, f64)> },
}

pub type Result<T> = std::result::Result<T, Error>;
