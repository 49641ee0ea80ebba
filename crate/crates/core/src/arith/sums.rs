//! Exact divisor–totient sums and smooth-number sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::FactoredInteger;
use super::rational::{ratio_u, ExactRational};
use crate::error::{Error, Result};

/// `F(q) = Σ_{d | q} 1/φ(d)`, computed from the multiplicative local factors
/// `1 + Σ_{i=1}^{e} 1/φ(p^i)`.
pub fn divisor_totient_total(q: &FactoredInteger) -> ExactRational {
    let mut acc = ExactRational::one();
    for &(p, e) in q.factors() {
        let mut local = ExactRational::one();
        let mut phi_pi = p - 1;
        for _ in 0..e {
            local += ratio_u(1, phi_pi);
            phi_pi *= p;
        }
        acc *= local;
    }
    acc
}

/// `Σ_{d | q, d ≥ 3} 1/φ(d)` for any `q ≥ 1`.
pub fn divisor_totient_tail(q: &FactoredInteger) -> ExactRational {
    let mut s = divisor_totient_total(q) - ExactRational::one();
    if q.n().is_multiple_of(2) {
        // d = 2 has φ(2) = 1
        s -= ExactRational::one();
    }
    s
}

/// `Σ_{d | q, d ≥ 3} 1/φ(d)` for odd `q ≥ 3`.
///
/// A modulus where some Erdősian function has `L(1, f) = 0` must have this sum at least 1.
pub fn divisor_totient_sum(q: &FactoredInteger) -> Result<ExactRational> {
    if q.n().is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "divisor-totient criterion needs odd q, got {}",
            q.n()
        )));
    }
    if q.n() < 3 {
        return Err(Error::Domain(format!(
            "divisor-totient criterion needs q ≥ 3, got {}",
            q.n()
        )));
    }
    Ok(divisor_totient_tail(q))
}

/// Elements of `M(d)` (integers whose prime factors all divide `d`) up to `bound`,
/// in lexicographic order of their exponent vectors over `primes`.
pub fn smooth_numbers(primes: &[u64], bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    fn rec(primes: &[u64], bound: u64, acc: u64, out: &mut Vec<u64>) {
        let Some((&p, rest)) = primes.split_first() else {
            out.push(acc);
            return;
        };
        let mut m = acc;
        loop {
            rec(rest, bound, m, out);
            match m.checked_mul(p) {
                Some(next) if next <= bound => m = next,
                _ => break,
            }
        }
    }
    rec(primes, bound, 1, &mut out);
    out
}

/// `Σ 1/m` over a list of positive integers, exactly.
pub fn reciprocal_sum(ms: &[u64]) -> ExactRational {
    // Common denominator: every m divides the lcm, which stays a product of few primes.
    let mut lcm = BigInt::one();
    for &m in ms {
        let m = BigInt::from(m);
        let g = num_integer::Integer::gcd(&lcm, &m);
        lcm = lcm / &g * m;
    }
    let mut num = BigInt::zero();
    for &m in ms {
        num += &lcm / BigInt::from(m);
    }
    BigRational::new(num, lcm)
}

/// `rad(d)/φ(rad(d)) = Σ_{m ∈ M(d)} 1/m`.
pub fn smooth_reciprocal_total(d: &FactoredInteger) -> ExactRational {
    let rad = d.radical();
    ratio_u(rad.n(), rad.phi())
}

/// Split of `Σ_{m ∈ M(d)} 1/m = d/φ(d)` at `bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothSumBracket {
    /// Sum over `m ≤ bound`.
    pub partial: ExactRational,
    /// Remaining mass over `m > bound`.
    pub tail: ExactRational,
}

pub fn smooth_sum_partial(d: &FactoredInteger, bound: u64) -> Result<SmoothSumBracket> {
    if d.n() < 2 {
        return Err(Error::Domain("smooth sum needs d ≥ 2".into()));
    }
    let primes: Vec<u64> = d.primes().collect();
    let partial = reciprocal_sum(&smooth_numbers(&primes, bound));
    let tail = smooth_reciprocal_total(d) - &partial;
    Ok(SmoothSumBracket { partial, tail })
}
