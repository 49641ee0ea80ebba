//! Exhaustive verification over all balanced sign vectors of a small odd modulus.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use super::criterion::{criterion_outcome, ConditionAContext, Outcome};
use super::digamma::digamma_table;
use super::erdosian::ErdosianFunction;
use super::lvalue::l_one_error_bound;
use crate::arith::FactoredInteger;
use crate::error::{Error, Result};
use crate::parallel::with_workers;

pub const DEFAULT_THRESHOLD: f64 = 1e-8;
pub const DEFAULT_CEILING: u64 = 29;
pub const DEFAULT_CRITERION_BOUND: u64 = 1000;

#[derive(Debug, Clone, Copy)]
pub struct BruteOptions {
    pub threshold: f64,
    /// Largest modulus accepted; the work grows like `C(q − 1, (q − 1)/2)`.
    pub ceiling: u64,
    pub criterion_bound: u64,
    pub workers: usize,
}

impl Default for BruteOptions {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            ceiling: DEFAULT_CEILING,
            criterion_bound: DEFAULT_CRITERION_BOUND,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteReport {
    pub q: u64,
    pub enumerated: u64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub min_abs_value: f64,
    pub argmin_signs: String,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub threshold: f64,
    pub all_nonzero: bool,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub error_bound: f64,
    pub criterion_bound: u64,
    pub criterion_nonzero: u64,
    pub criterion_undecided: u64,
}

/// Sign vectors are bitmasks over `n = q − 1` positions; bit `n − 1 − i` set
/// means `f(i + 1) = −1`. With `+` before `-`, integer order is string order.
fn signs_of(mask: u64, n: usize) -> Vec<i8> {
    (0..n)
        .map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 })
        .collect()
}

fn sign_string(mask: u64, n: usize) -> String {
    (0..n)
        .map(|i| {
            if mask >> (n - 1 - i) & 1 == 1 {
                '-'
            } else {
                '+'
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    count: u64,
    min: (f64, u64),
    nonzero: u64,
    undecided: u64,
    /// Smallest offending mask, if any.
    failure: Option<(u64, f64)>,
}

impl Partial {
    fn empty() -> Self {
        Self {
            count: 0,
            min: (f64::INFINITY, u64::MAX),
            nonzero: 0,
            undecided: 0,
            failure: None,
        }
    }

    fn merge(self, other: Self) -> Self {
        let min = match self
            .min
            .0
            .partial_cmp(&other.min.0)
            .unwrap_or(Ordering::Equal)
        {
            Ordering::Less => self.min,
            Ordering::Greater => other.min,
            Ordering::Equal => {
                if self.min.1 <= other.min.1 {
                    self.min
                } else {
                    other.min
                }
            }
        };
        let failure = match (self.failure, other.failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        Self {
            count: self.count + other.count,
            min,
            nonzero: self.nonzero + other.nonzero,
            undecided: self.undecided + other.undecided,
            failure,
        }
    }
}

pub fn brute_force_verify(q: u64, options: &BruteOptions) -> Result<BruteReport> {
    if q.is_multiple_of(2) || q < 3 {
        return Err(Error::Domain(format!(
            "brute force needs odd q ≥ 3, got {q}"
        )));
    }
    if q > options.ceiling {
        return Err(Error::Resource(format!(
            "q = {q} exceeds the brute-force ceiling {}",
            options.ceiling
        )));
    }
    let n = (q - 1) as usize;
    let psi = digamma_table(q);
    let error_bound = l_one_error_bound(q);
    let cutoff = options.threshold + error_bound;
    let ctx = ConditionAContext::new(
        &FactoredInteger::by_trial_division(q)?,
        options.criterion_bound,
    )?;

    let total_masks = 1u64 << n;
    let step = (total_masks / 256).max(1);
    let starts: Vec<u64> = (0..total_masks).step_by(step as usize).collect();

    let visit = |lo: u64| -> Result<Partial> {
        let mut acc = Partial::empty();
        for mask in lo..(lo + step).min(total_masks) {
            if mask.count_ones() as usize != n / 2 {
                continue;
            }
            let signs = signs_of(mask, n);
            let s: f64 = signs
                .iter()
                .zip(&psi)
                .map(|(&f, &p)| f64::from(f) * p)
                .sum();
            let value = -s / q as f64;
            let abs = value.abs();
            acc.count += 1;
            if abs < acc.min.0 {
                acc.min = (abs, mask);
            }
            if abs <= cutoff && acc.failure.is_none() {
                acc.failure = Some((mask, abs));
            }
            let f = ErdosianFunction::new(q, signs)?;
            match criterion_outcome(&ctx, &f)? {
                Outcome::Nonzero => acc.nonzero += 1,
                Outcome::Undecided => acc.undecided += 1,
                Outcome::Zero => {}
            }
        }
        Ok(acc)
    };

    let partials: Vec<Result<Partial>> = with_workers(options.workers, || {
        starts.par_iter().map(|&lo| visit(lo)).collect()
    });
    let mut acc = Partial::empty();
    for p in partials {
        acc = acc.merge(p?);
    }

    if let Some((mask, abs_value)) = acc.failure {
        return Err(Error::Escalation {
            q,
            signs: sign_string(mask, n),
            abs_value,
            threshold: options.threshold,
            error_bound,
        });
    }
    Ok(BruteReport {
        q,
        enumerated: acc.count,
        min_abs_value: acc.min.0,
        argmin_signs: sign_string(acc.min.1, n),
        threshold: options.threshold,
        all_nonzero: true,
        error_bound,
        criterion_bound: options.criterion_bound,
        criterion_nonzero: acc.nonzero,
        criterion_undecided: acc.undecided,
    })
}
