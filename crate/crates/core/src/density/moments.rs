//! Moment sums of `G(q) = Σ_{d | q, d ≥ 3} 1/φ(d)` over `q ≡ 1 (mod 4)`.

use rayon::prelude::*;
use serde::Serialize;

use super::products::{p1_p2_products, OddPrimes, ProductEstimate};
use crate::arith::totients;
use crate::error::{Error, Result};
use crate::parallel::{with_workers, CHUNK};

/// `F(q) = Σ_{d | q} 1/φ(d)` for every odd `q ≤ max`, built by adding `1/φ(d)`
/// to each odd multiple of each odd `d`.
#[derive(Debug, Clone)]
pub struct DivisorTotientTable {
    max: u64,
    /// Entry `i` holds `F(2i + 1)`.
    odd: Vec<f64>,
}

impl DivisorTotientTable {
    pub fn new(max: u64) -> Result<Self> {
        if max < 1 {
            return Err(Error::Domain("table bound must be positive".into()));
        }
        if max > u64::from(u32::MAX) {
            return Err(Error::Resource(format!(
                "table bound {max} exceeds u32 range"
            )));
        }
        let phi = totients(max);
        let len = max.div_ceil(2) as usize;
        let mut odd = vec![0.0f64; len];
        for d in (1..=max as usize).step_by(2) {
            let inc = 1.0 / f64::from(phi[d]);
            // odd multiples of d step by 2d, i.e. by d in the odd-index space
            let mut i = (d - 1) / 2;
            while i < len {
                odd[i] += inc;
                i += d;
            }
        }
        Ok(Self { max, odd })
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    /// `F(q)` for odd `q ≤ max`.
    pub fn get(&self, q: u64) -> Option<f64> {
        (q % 2 == 1 && q <= self.max).then(|| self.odd[(q / 2) as usize])
    }

    /// Odd `q ≤ max` with their `F(q)`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.odd
            .iter()
            .enumerate()
            .map(|(i, &f)| (2 * i as u64 + 1, f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentPoint {
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub exponent: f64,
    /// Range bound, or 0 for a product-based limit.
    pub x: u64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub normalized_value: f64,
}

/// `G(q)` for every `q ≡ 1 (mod 4)`, `5 ≤ q ≤ max`, cached so the moment curve
/// can be evaluated at many exponents.
#[derive(Debug, Clone)]
pub struct MomentCurve {
    max: u64,
    values: Vec<f64>,
    workers: usize,
}

impl MomentCurve {
    pub fn new(max: u64, workers: usize) -> Result<Self> {
        if max < 5 {
            return Err(Error::Domain(format!("moment sums need X ≥ 5, got {max}")));
        }
        let table = DivisorTotientTable::new(max)?;
        let values = (5..=max)
            .step_by(4)
            .map(|q| table.get(q).unwrap() - 1.0)
            .collect();
        Ok(Self {
            max,
            values,
            workers,
        })
    }

    pub fn from_table(table: &DivisorTotientTable, workers: usize) -> Result<Self> {
        if table.max() < 5 {
            return Err(Error::Domain("moment sums need X ≥ 5".into()));
        }
        let values = (5..=table.max())
            .step_by(4)
            .map(|q| table.get(q).unwrap() - 1.0)
            .collect();
        Ok(Self {
            max: table.max(),
            values,
            workers,
        })
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    /// Number of moduli `q ≡ 1 (mod 4)` in range.
    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(1/N) Σ G(q)^r`. Chunk sums are combined in index order, so the result
    /// does not depend on the worker count.
    pub fn normalized_sum(&self, r: f64) -> f64 {
        let chunk_sums: Vec<f64> = with_workers(self.workers, || {
            self.values
                .par_chunks(CHUNK as usize)
                .map(|c| c.iter().map(|g| g.powf(r)).sum::<f64>())
                .collect()
        });
        chunk_sums.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Fraction of moduli with `G(q) ≥ 1`, i.e. not excluded by the divisor test.
    pub fn fraction_at_least_one(&self) -> f64 {
        self.values.iter().filter(|&&g| g >= 1.0).count() as f64 / self.values.len() as f64
    }

    pub fn point(&self, r: f64) -> MomentPoint {
        MomentPoint {
            exponent: r,
            x: self.max,
            normalized_value: self.normalized_sum(r),
        }
    }
}

pub fn moment_sum_empirical(r: f64, max: u64, workers: usize) -> Result<MomentPoint> {
    if !r.is_finite() || r < 1.0 {
        return Err(Error::Domain(format!(
            "moment exponent must be at least 1, got {r}"
        )));
    }
    Ok(MomentCurve::new(max, workers)?.point(r))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Limit of `(1/N) Σ_{q ≡ 1 (4)} G(q)^r` for integer `r`, as
/// `Σ_k C(r, k)(−1)^{r−k} mean(F^k)` with `mean(F^k) = p₁(k)`; the χ-twisted
/// part of each mean tends to zero and is dropped.
pub fn moment_constant_integer_with(
    r: u32,
    primes: &OddPrimes,
    depth: u32,
) -> Result<ProductEstimate> {
    if !(1..=8).contains(&r) {
        return Err(Error::Domain(format!(
            "integer moment needs 1 ≤ r ≤ 8, got {r}"
        )));
    }
    let sign = |k: u32| if (r - k).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut value = sign(0);
    let mut tail_bound = 0.0;
    for k in 1..=r {
        let (p1, _) = p1_p2_products(f64::from(k), primes, depth)?;
        let c = binomial(r, k);
        value += sign(k) * c * p1.value;
        tail_bound += c * p1.tail_bound;
    }
    Ok(ProductEstimate {
        value,
        prime_limit: primes.limit(),
        depth: Some(depth),
        tail_bound,
        rigorous: true,
    })
}

pub fn moment_constant_integer(r: u32, prime_limit: u64, depth: u32) -> Result<ProductEstimate> {
    moment_constant_integer_with(r, &OddPrimes::new(prime_limit)?, depth)
}

/// Natural cubic spline through `(k, ln M(k))`, `k = 1..=8`, from the integer
/// moment constants. Defined on `[1, 8]`.
#[derive(Debug, Clone)]
pub struct IntegerMomentSpline {
    prime_limit: u64,
    knots: Vec<f64>,
    second: Vec<f64>,
}

impl IntegerMomentSpline {
    pub const MAX_EXPONENT: f64 = 8.0;

    pub fn new(prime_limit: u64, depth: u32) -> Result<Self> {
        let primes = OddPrimes::new(prime_limit)?;
        let mut knots = Vec::with_capacity(8);
        for r in 1..=8 {
            let m = moment_constant_integer_with(r, &primes, depth)?.value;
            if m.is_nan() || m <= 0.0 {
                return Err(Error::Domain(format!(
                    "integer moment {r} is not positive: {m}"
                )));
            }
            knots.push(m.ln());
        }
        // unit spacing; solve the tridiagonal system for interior second derivatives
        let n = knots.len();
        let mut second = vec![0.0; n];
        let mut diag = vec![4.0; n];
        let mut rhs: Vec<f64> = (0..n)
            .map(|i| {
                if i == 0 || i == n - 1 {
                    0.0
                } else {
                    6.0 * (knots[i + 1] - 2.0 * knots[i] + knots[i - 1])
                }
            })
            .collect();
        for i in 2..n - 1 {
            let w = 1.0 / diag[i - 1];
            diag[i] -= w;
            rhs[i] -= w * rhs[i - 1];
        }
        for i in (1..n - 1).rev() {
            second[i] = (rhs[i] - second[i + 1]) / diag[i];
        }
        Ok(Self {
            prime_limit,
            knots,
            second,
        })
    }

    pub fn prime_limit(&self) -> u64 {
        self.prime_limit
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if !(1.0..=Self::MAX_EXPONENT).contains(&r) {
            return Err(Error::Domain(format!("spline covers r in [1, 8], got {r}")));
        }
        let i = ((r - 1.0).floor() as usize).min(self.knots.len() - 2);
        let t = r - 1.0 - i as f64;
        let (y0, y1) = (self.knots[i], self.knots[i + 1]);
        let (m0, m1) = (self.second[i], self.second[i + 1]);
        let s = 1.0 - t;
        let ln = s * y0 + t * y1 + ((s * s * s - s) * m0 + (t * t * t - t) * m1) / 6.0;
        Ok(ln.exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisor_totient_total, rational, FactoredInteger, SpfSieve};

    #[test]
    fn table_matches_exact_sums() {
        let max = 20_000;
        let t = DivisorTotientTable::new(max).unwrap();
        let sieve = SpfSieve::new(max).unwrap();
        for (q, f) in t.iter() {
            let exact = divisor_totient_total(&FactoredInteger::from_sieve(q, &sieve).unwrap());
            assert!((f - rational::to_f64(&exact)).abs() < 1e-13, "q={q}");
        }
        assert_eq!(t.get(1), Some(1.0));
        assert_eq!(t.get(4), None);
    }

    #[test]
    fn small_moment() {
        let p = moment_sum_empirical(1.0, 5, 1).unwrap();
        assert_eq!(p.normalized_value, 0.25);
        let c = MomentCurve::new(105, 1).unwrap();
        assert_eq!(c.count(), 26);
        assert!(moment_sum_empirical(0.5, 100, 1).is_err());
    }

    #[test]
    fn worker_independence() {
        let a = MomentCurve::new(300_000, 1).unwrap();
        let b = MomentCurve::new(300_000, 8).unwrap();
        for r in [1.0, 2.0, 3.85] {
            assert_eq!(a.normalized_sum(r).to_bits(), b.normalized_sum(r).to_bits());
        }
    }

    #[test]
    fn integer_moments_match_products() {
        use crate::density::products::{first_moment_constant, second_moment_constant};
        let limit = 100_000;
        let first = first_moment_constant(limit).unwrap();
        let m1 = moment_constant_integer(1, limit, 30).unwrap();
        assert!((m1.value - first.value).abs() <= m1.tail_bound + first.tail_bound);
        let second = second_moment_constant(limit, 30).unwrap();
        let m2 = moment_constant_integer(2, limit, 30).unwrap();
        assert!((m2.value - second.value).abs() <= m2.tail_bound + second.tail_bound);
        assert!(moment_constant_integer(0, limit, 30).is_err());
        assert!(moment_constant_integer(9, limit, 30).is_err());
    }

    #[test]
    fn spline_interpolates_knots() {
        let s = IntegerMomentSpline::new(10_000, 30).unwrap();
        let primes = OddPrimes::new(10_000).unwrap();
        for r in 1..=8u32 {
            let m = moment_constant_integer_with(r, &primes, 30).unwrap().value;
            assert!((s.value(f64::from(r)).unwrap() - m).abs() < 1e-12 * m.max(1.0));
        }
        assert!(s.value(0.5).is_err());
    }
}
