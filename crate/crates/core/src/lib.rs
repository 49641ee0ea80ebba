//! Certification of the Erdős non-vanishing conjecture for individual moduli,
//! exact Okada-criterion checks for explicit Erdősian functions, and numerical
//! reproduction of moment-method density bounds.

pub mod arith;
pub mod certify;
pub mod density;
pub mod error;
pub mod num_format;
pub mod okada;
mod parallel;

pub use error::{Error, Result};
