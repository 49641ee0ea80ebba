//! Per-modulus certification cascade and the census over `q ≡ 1 (mod 4)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisor_totient_tail, rational, ExactRational, FactoredInteger, SpfSieve};
use crate::error::{Error, Result};
use crate::parallel::{chunks, with_workers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    True,
    Unknown,
}

/// The sufficient condition that settled a modulus.
///
/// `EvenModulus` and `ThreeMod4` are cited theorems, flagged rather than re-derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    EvenModulus,
    ThreeMod4,
    DivisorTotientTest,
    OkadaTotient,
    SpfDivisorTest,
    None,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::EvenModulus,
        Rule::ThreeMod4,
        Rule::DivisorTotientTest,
        Rule::OkadaTotient,
        Rule::SpfDivisorTest,
        Rule::None,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::EvenModulus => "even_modulus",
            Rule::ThreeMod4 => "three_mod4",
            Rule::OkadaTotient => "okada_totient",
            Rule::DivisorTotientTest => "divisor_totient_test",
            Rule::SpfDivisorTest => "spf_divisor_test",
            Rule::None => "none",
        }
    }
}

/// Exact values the cascade looked at.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// `Σ_{d | q, d ≥ 3} 1/φ(d)`.
    #[serde(serialize_with = "rational::serialize")]
    pub sum: ExactRational,
    pub phi: u64,
    pub d: u64,
    pub spf: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub q: u64,
    pub status: Status,
    #[serde(flatten)]
    pub witness: Witness,
    pub rule: Rule,
}

/// Certifies a single modulus, factoring it by trial division.
pub fn certify(q: u64) -> Result<Certificate> {
    if q < 2 {
        return Err(Error::Domain(format!("certify needs q ≥ 2, got {q}")));
    }
    certify_factored(&FactoredInteger::by_trial_division(q)?)
}

/// Runs the cascade on an already factored modulus. First rule that fires wins.
pub fn certify_factored(fq: &FactoredInteger) -> Result<Certificate> {
    let q = fq.n();
    if q < 2 {
        return Err(Error::Domain(format!("certify needs q ≥ 2, got {q}")));
    }
    let witness = Witness {
        sum: divisor_totient_tail(fq),
        phi: fq.phi(),
        d: fq.num_divisors(),
        spf: fq.smallest_prime().expect("q ≥ 2 has a prime factor"),
    };
    let rule = if q.is_multiple_of(2) {
        Rule::EvenModulus
    } else if q % 4 == 3 {
        Rule::ThreeMod4
    } else if witness.sum < ExactRational::one() {
        Rule::DivisorTotientTest
    } else if 2 * witness.phi + 1 > q {
        Rule::OkadaTotient
    } else if witness.spf >= witness.d {
        Rule::SpfDivisorTest
    } else {
        Rule::None
    };
    let status = if rule == Rule::None {
        Status::Unknown
    } else {
        Status::True
    };
    Ok(Certificate {
        q,
        status,
        witness,
        rule,
    })
}

/// Counts of each rule over `q ≡ 1 (mod 4)`, `5 ≤ q ≤ max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub max: u64,
    pub total: u64,
    pub counts: BTreeMap<&'static str, u64>,
    pub certified: u64,
    pub unknown: u64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub certified_fraction: f64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub unknown_fraction: f64,
    #[serde(skip)]
    pub unknown_moduli: Vec<u64>,
}

impl CensusReport {
    pub fn count(&self, rule: Rule) -> u64 {
        self.counts.get(rule.name()).copied().unwrap_or(0)
    }

    /// `(rule, count, fraction)` rows in cascade order.
    pub fn rows(&self) -> Vec<(&'static str, u64, f64)> {
        Rule::ALL
            .iter()
            .map(|r| {
                let c = self.count(*r);
                (r.name(), c, c as f64 / self.total as f64)
            })
            .collect()
    }
}

#[derive(Default)]
struct Tally {
    counts: [u64; 6],
    unknown: Vec<u64>,
}

pub fn census(max: u64, workers: usize) -> Result<CensusReport> {
    if max < 5 {
        return Err(Error::Domain(format!("census needs X ≥ 5, got {max}")));
    }
    let sieve = Arc::new(SpfSieve::new(max)?);
    let ranges = chunks(5, max);
    let tallies: Vec<Result<Tally>> = with_workers(workers, || {
        ranges
            .par_iter()
            .map(|&(lo, hi)| {
                let mut t = Tally::default();
                let first = lo + (4 + 1 - lo % 4) % 4;
                for q in (first..=hi).step_by(4) {
                    let cert = certify_factored(&FactoredInteger::from_sieve(q, &sieve)?)?;
                    let idx = Rule::ALL.iter().position(|r| *r == cert.rule).unwrap();
                    t.counts[idx] += 1;
                    if cert.status == Status::Unknown {
                        t.unknown.push(q);
                    }
                }
                Ok(t)
            })
            .collect()
    });

    let mut counts = [0u64; 6];
    let mut unknown_moduli = Vec::new();
    for t in tallies {
        let t = t?;
        for (c, x) in counts.iter_mut().zip(t.counts) {
            *c += x;
        }
        unknown_moduli.extend(t.unknown);
    }
    let total: u64 = counts.iter().sum();
    let unknown = counts[5];
    let certified = total - unknown;
    Ok(CensusReport {
        max,
        total,
        counts: Rule::ALL.iter().map(|r| r.name()).zip(counts).collect(),
        certified,
        unknown,
        certified_fraction: certified as f64 / total as f64,
        unknown_fraction: unknown as f64 / total as f64,
        unknown_moduli,
    })
}
