//! Sieves, factorizations and exact divisor–totient sums.

pub mod factor;
pub mod rational;
pub mod sieve;
pub mod sums;

pub use factor::{valuation, FactoredInteger};
pub use rational::ExactRational;
pub use sieve::{for_each_prime, primes_up_to, totients, SpfSieve};
pub use sums::{
    divisor_totient_sum, divisor_totient_tail, divisor_totient_total, smooth_numbers,
    smooth_sum_partial, SmoothSumBracket,
};
