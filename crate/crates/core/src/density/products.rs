//! Truncated Euler products with explicit tail bounds.
//!
//! Tail rigor rests on two facts: every local factor here is `1 + O(1/p²)` with
//! an explicit constant, and `Σ_{n > L} 1/n² < 1/L` bounds the omitted primes by
//! the omitted integers.

use serde::Serialize;

use crate::arith::{divisor_totient_total, primes_up_to, rational, FactoredInteger};
use crate::error::{Error, Result};

pub const DEFAULT_DEPTH: u32 = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductEstimate {
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub value: f64,
    pub prime_limit: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub tail_bound: f64,
    /// Whether `tail_bound` is proven rather than a heuristic size estimate.
    pub rigorous: bool,
}

/// Odd primes up to a limit, computed once and reused across evaluations.
#[derive(Debug, Clone)]
pub struct OddPrimes {
    limit: u64,
    primes: Vec<f64>,
}

impl OddPrimes {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 3 {
            return Err(Error::Domain(format!(
                "prime limit must be at least 3, got {limit}"
            )));
        }
        let primes = primes_up_to(limit)
            .into_iter()
            .skip(1)
            .map(f64::from)
            .collect();
        Ok(Self { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

fn rounding_allowance(terms: usize, value: f64) -> f64 {
    4.0 * terms as f64 * f64::EPSILON * value.abs()
}

fn check_depth(depth: u32) -> Result<()> {
    if depth < 2 {
        return Err(Error::Domain(format!(
            "local depth must be at least 2, got {depth}"
        )));
    }
    Ok(())
}

/// `Π_{3 ≤ p ≤ L} (1 + p/((p − 1)(p² − 1))) − 1 = Σ_{d odd ≥ 3} 1/(d φ(d))` truncated at `L`.
pub fn first_moment_constant(prime_limit: u64) -> Result<ProductEstimate> {
    let primes = OddPrimes::new(prime_limit)?;
    let mut prod = 1.0;
    for &p in &primes.primes {
        prod *= 1.0 + p / ((p - 1.0) * (p * p - 1.0));
    }
    // log of each omitted factor is at most p/((p−1)(p²−1)) ≤ 2/p²
    let log_tail = 2.0 / prime_limit as f64;
    let tail_bound = prod * log_tail.exp_m1() + rounding_allowance(primes.len(), prod);
    Ok(ProductEstimate {
        value: prod - 1.0,
        prime_limit,
        depth: None,
        tail_bound,
        rigorous: true,
    })
}

/// `1/φ(p^i)` for `i = 0..=depth`.
fn inv_phi_powers(p: f64, depth: u32) -> Vec<f64> {
    let mut t = Vec::with_capacity(depth as usize + 1);
    t.push(1.0);
    let mut cur = 1.0 / (p - 1.0);
    for _ in 1..=depth {
        t.push(cur);
        cur /= p;
    }
    t
}

/// `Σ_{d₁, d₂ odd ≥ 3} 1/(φ(d₁) φ(d₂) [d₁, d₂]) = B − 2A + 1` with
/// `A = Π Σ_i 1/(φ(p^i) p^i)` and `B = Π Σ_{i,j} 1/(φ(p^i) φ(p^j) p^{max(i,j)})`.
pub fn second_moment_constant(prime_limit: u64, depth: u32) -> Result<ProductEstimate> {
    check_depth(depth)?;
    let primes = OddPrimes::new(prime_limit)?;
    let (mut a, mut b) = (1.0f64, 1.0f64);
    let (mut depth_tail_a, mut depth_tail_b) = (0.0, 0.0);
    for &p in &primes.primes {
        let t = inv_phi_powers(p, depth);
        let (mut local_a, mut local_b) = (0.0, 0.0);
        let mut prefix = 0.0;
        let mut p_pow = 1.0;
        for (k, &tk) in t.iter().enumerate() {
            if k > 0 {
                p_pow /= p;
            }
            local_a += tk * p_pow;
            // pairs with max(i, j) = k
            local_b += p_pow * tk * (tk + 2.0 * prefix);
            prefix += tk;
        }
        a *= local_a;
        b *= local_b;
        // omitted exponents beyond depth, geometric with ratio 1/p²
        let geo = p.powi(-2 * (depth as i32 + 1)) / (1.0 - 1.0 / (p * p)) * p / (p - 1.0);
        depth_tail_a += geo;
        depth_tail_b += 5.0 * geo;
    }
    let inv_l = 1.0 / prime_limit as f64;
    // A_p − 1 ≤ 2/p², B_p − 1 ≤ 6/p² for p ≥ 3
    let up_a = a * (2.0 * inv_l + depth_tail_a).exp_m1();
    let up_b = b * (6.0 * inv_l + depth_tail_b).exp_m1();
    let value = b - 2.0 * a + 1.0;
    let tail_bound = up_b.max(2.0 * up_a) + rounding_allowance(primes.len(), b + 2.0 * a);
    Ok(ProductEstimate {
        value,
        prime_limit,
        depth: Some(depth),
        tail_bound,
        rigorous: true,
    })
}

/// `f_α(q) = (Σ_{d | q} 1/φ(d))^α`, evaluated from the exact rational base.
pub fn f_alpha(q: &FactoredInteger, alpha: f64) -> f64 {
    rational::to_f64(&divisor_totient_total(q)).powf(alpha)
}

/// `F(p^k) = 1 + Σ_{i=1}^{k} 1/φ(p^i)` for `k = 1..=depth`.
fn prime_power_f(p: f64, depth: u32) -> impl Iterator<Item = f64> {
    let mut f = 1.0;
    let mut inv_phi = 1.0 / (p - 1.0);
    (0..depth).map(move |_| {
        f += inv_phi;
        inv_phi /= p;
        f
    })
}

/// `p₁ = Π (1 − 1/p)(1 + Σ_k f_α(p^k)/p^k)` and its χ-twisted companion `p₂`
/// (factor `χ(p)^k` on each term, χ the non-principal character mod 4).
pub fn p1_p2_products(
    alpha: f64,
    primes: &OddPrimes,
    depth: u32,
) -> Result<(ProductEstimate, ProductEstimate)> {
    check_depth(depth)?;
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain(format!(
            "alpha must be finite and non-negative, got {alpha}"
        )));
    }
    let (mut p1, mut p2) = (1.0f64, 1.0f64);
    let mut depth_tail = 0.0;
    for &p in &primes.primes {
        let chi = if p as u64 % 4 == 1 { 1.0 } else { -1.0 };
        let (mut s1, mut s2) = (1.0, 1.0);
        let mut inv_pk = 1.0;
        let mut chi_k = 1.0;
        for fk in prime_power_f(p, depth) {
            inv_pk /= p;
            chi_k *= chi;
            let term = fk.powf(alpha) * inv_pk;
            s1 += term;
            s2 += chi_k * term;
        }
        if !s1.is_finite() || !s2.is_finite() {
            return Err(Error::Domain(format!("local sum diverged at p = {p}")));
        }
        let w = 1.0 - 1.0 / p;
        p1 *= w * s1;
        p2 *= w * s2;
        let g = 1.0 + p / ((p - 1.0) * (p - 1.0));
        depth_tail += 1.5 * g.powf(alpha) * p.powi(-(depth as i32) - 1);
    }
    // For p > L: 0 ≤ log(local) ≤ α G^α/(p − 1)², G = 1 + p/(p − 1)².
    let l = primes.limit as f64;
    let g_l = 1.0 + l / ((l - 1.0) * (l - 1.0));
    let log_tail = alpha * g_l.powf(alpha) / (l - 1.0) + depth_tail;
    let n = primes.len();
    let p1_est = ProductEstimate {
        value: p1,
        prime_limit: primes.limit,
        depth: Some(depth),
        tail_bound: p1 * log_tail.exp_m1() + rounding_allowance(n * depth as usize, p1),
        rigorous: true,
    };
    // Same magnitude estimate for p₂; its limit is not controlled by the truncation.
    let p2_est = ProductEstimate {
        value: p2,
        prime_limit: primes.limit,
        depth: Some(depth),
        tail_bound: p2.abs() * log_tail.exp_m1() + rounding_allowance(n * depth as usize, p2),
        rigorous: false,
    };
    Ok((p1_est, p2_est))
}

pub fn p1_product(alpha: f64, prime_limit: u64, depth: u32) -> Result<ProductEstimate> {
    Ok(p1_p2_products(alpha, &OddPrimes::new(prime_limit)?, depth)?.0)
}

pub fn p2_product(alpha: f64, prime_limit: u64, depth: u32) -> Result<ProductEstimate> {
    Ok(p1_p2_products(alpha, &OddPrimes::new(prime_limit)?, depth)?.1)
}

/// `(p₁ + p₂)/2^α`, the bound on the exceptional density among `q ≡ 1 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AltBound {
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub alpha: f64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub value: f64,
    pub p1: ProductEstimate,
    pub p2: ProductEstimate,
}

pub fn alt_bound_with(alpha: f64, primes: &OddPrimes, depth: u32) -> Result<AltBound> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let (p1, p2) = p1_p2_products(alpha, primes, depth)?;
    let value = (p1.value + p2.value) / alpha.exp2();
    Ok(AltBound {
        alpha,
        value,
        p1,
        p2,
    })
}

pub fn alt_bound(alpha: f64, prime_limit: u64, depth: u32) -> Result<AltBound> {
    alt_bound_with(alpha, &OddPrimes::new(prime_limit)?, depth)
}
