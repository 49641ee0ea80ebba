//! `L(1, f)` for explicit Erdősian functions and Okada's exact criterion.

pub mod brute;
pub mod criterion;
pub mod digamma;
pub mod erdosian;
pub mod lvalue;

pub use brute::{brute_force_verify, BruteOptions, BruteReport};
pub use criterion::{
    condition_a, condition_b, criterion_verdict, epsilon, ConditionAInterval, CriterionVerdict,
    Outcome,
};
pub use digamma::digamma_fraction;
pub use erdosian::ErdosianFunction;
pub use lvalue::{l_one, LValue};
