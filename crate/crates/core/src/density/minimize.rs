//! Golden-section minimization of the moment and alternative bound curves.

use serde::Serialize;

use super::moments::{IntegerMomentSpline, MomentCurve};
use super::products::{alt_bound_with, OddPrimes, ProductEstimate};
use crate::error::{Error, Result};

/// Exponent resolution of the final bracket.
pub const DEFAULT_TOLERANCE: f64 = 1e-2;
/// Points in the coarse scan used to bracket the minimum and check unimodality.
pub const DEFAULT_GRID: usize = 19;

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    /// Coarse scan, in increasing `x`.
    pub samples: Vec<(f64, f64)>,
    /// Whether `x` lies strictly inside the search range.
    pub interior: bool,
}

fn check_unimodal(samples: &[(f64, f64)]) -> Result<usize> {
    let (best, _) = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .expect("non-empty scan");
    let scale = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    let slack = 1e-12 * scale;
    let descending = samples[..=best]
        .windows(2)
        .all(|w| w[1].1 <= w[0].1 + slack);
    let ascending = samples[best..].windows(2).all(|w| w[1].1 + slack >= w[0].1);
    if descending && ascending {
        Ok(best)
    } else {
        Err(Error::NotUnimodal {
            samples: samples.to_vec(),
        })
    }
}

/// Scans `grid` points on `[lo, hi]`, rejects non-unimodal scans, then narrows
/// the bracket around the best scan point by golden-section steps until it is
/// shorter than `tol`.
pub fn golden_section_min(
    mut f: impl FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
    grid: usize,
) -> Result<Minimum> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::Domain(format!("invalid search range [{lo}, {hi}]")));
    }
    if hi - lo < tol {
        let x = 0.5 * (lo + hi);
        let value = f(x)?;
        return Ok(Minimum {
            x,
            value,
            samples: vec![(x, value)],
            interior: lo < hi,
        });
    }
    let grid = grid.max(3);
    let mut samples = Vec::with_capacity(grid);
    for i in 0..grid {
        let x = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
        samples.push((x, f(x)?));
    }
    let best = check_unimodal(&samples)?;
    let mut a = samples[best.saturating_sub(1)].0;
    let mut b = samples[(best + 1).min(grid - 1)].0;
    let (mut x_best, mut f_best) = samples[best];

    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a >= tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx < f_best {
            x_best = x;
            f_best = fx;
        }
    }
    let interior = x_best - lo > tol && hi - x_best > tol;
    Ok(Minimum {
        x: x_best,
        value: f_best,
        samples,
        interior,
    })
}

/// One row of a curve dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub exponent: f64,
    /// `X` for empirical sums, prime limit for products.
    pub truncation: u64,
    pub value: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Truncation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_limit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizerReport {
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub exponent_star: f64,
    #[serde(serialize_with = "crate::num_format::serialize")]
    pub value: f64,
    pub method: &'static str,
    pub truncation: Truncation,
    pub interior: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1: Option<ProductEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2: Option<ProductEstimate>,
    #[serde(skip)]
    pub curve: Vec<CurvePoint>,
}

/// Which evaluator drives the fractional-moment search.
pub enum MomentEvaluator<'a> {
    Empirical(&'a MomentCurve),
    IntegerInterpolated(&'a IntegerMomentSpline),
}

pub fn minimize_moment(
    evaluator: MomentEvaluator<'_>,
    range: (f64, f64),
) -> Result<MinimizerReport> {
    let (lo, hi) = range;
    if lo < 1.0 || hi > 12.0 {
        return Err(Error::Domain(format!(
            "moment range must lie in [1, 12], got [{lo}, {hi}]"
        )));
    }
    let (min, method, truncation, x) = match evaluator {
        MomentEvaluator::Empirical(curve) => {
            let m = golden_section_min(
                |r| Ok(curve.normalized_sum(r)),
                lo,
                hi,
                DEFAULT_TOLERANCE,
                DEFAULT_GRID,
            )?;
            let t = Truncation {
                x: Some(curve.max()),
                prime_limit: None,
                depth: None,
            };
            (m, "empirical_sieve", t, curve.max())
        }
        MomentEvaluator::IntegerInterpolated(spline) => {
            if hi > IntegerMomentSpline::MAX_EXPONENT {
                return Err(Error::Domain(
                    "integer-interpolated evaluator covers r ≤ 8".into(),
                ));
            }
            let m =
                golden_section_min(|r| spline.value(r), lo, hi, DEFAULT_TOLERANCE, DEFAULT_GRID)?;
            let t = Truncation {
                x: None,
                prime_limit: Some(spline.prime_limit()),
                depth: None,
            };
            (m, "integer_moment_spline", t, spline.prime_limit())
        }
    };
    let curve = min
        .samples
        .iter()
        .map(|&(exponent, value)| CurvePoint {
            exponent,
            truncation: x,
            value,
            tail_bound: 0.0,
        })
        .collect();
    Ok(MinimizerReport {
        exponent_star: min.x,
        value: min.value,
        method,
        truncation,
        interior: min.interior,
        p1: None,
        p2: None,
        curve,
    })
}

pub fn minimize_alt(prime_limit: u64, depth: u32, range: (f64, f64)) -> Result<MinimizerReport> {
    let (lo, hi) = range;
    if lo.is_nan() || lo <= 0.0 || hi > 16.0 {
        return Err(Error::Domain(format!(
            "alpha range must lie in (0, 16], got [{lo}, {hi}]"
        )));
    }
    let primes = OddPrimes::new(prime_limit)?;
    let mut curve = Vec::new();
    let min = golden_section_min(
        |a| {
            let b = alt_bound_with(a, &primes, depth)?;
            curve.push(CurvePoint {
                exponent: a,
                truncation: prime_limit,
                value: b.value,
                tail_bound: (b.p1.tail_bound + b.p2.tail_bound) / a.exp2(),
            });
            Ok(b.value)
        },
        lo,
        hi,
        DEFAULT_TOLERANCE,
        DEFAULT_GRID,
    )?;
    curve.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
    let at_min = alt_bound_with(min.x, &primes, depth)?;
    Ok(MinimizerReport {
        exponent_star: min.x,
        value: min.value,
        method: "alt_euler_product",
        truncation: Truncation {
            x: None,
            prime_limit: Some(prime_limit),
            depth: Some(depth),
        },
        interior: min.interior,
        p1: Some(at_min.p1),
        p2: Some(at_min.p2),
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_minimum() {
        let m = golden_section_min(|x| Ok((x - 3.85).powi(2) + 0.18), 1.0, 10.0, 1e-2, 19).unwrap();
        assert!((m.x - 3.85).abs() < 1e-2);
        assert!((m.value - 0.18).abs() < 1e-4);
        assert!(m.interior);
        for &(_, v) in &m.samples {
            assert!(m.value <= v);
        }
    }

    #[test]
    fn degenerate_range() {
        let m = golden_section_min(|x| Ok(x * x), 2.0, 2.0, 1e-2, 19).unwrap();
        assert_eq!((m.x, m.value), (2.0, 4.0));
        assert!(!m.interior);
    }

    #[test]
    fn boundary_minimum_is_flagged() {
        let m = golden_section_min(Ok, 1.0, 5.0, 1e-2, 9).unwrap();
        assert!(!m.interior);
        assert!(m.x - 1.0 < 0.3);
    }

    #[test]
    fn rejects_bimodal_curves() {
        let r = golden_section_min(|x| Ok((3.0 * x).sin()), 0.0, 10.0, 1e-2, 19);
        assert!(matches!(r, Err(Error::NotUnimodal { samples }) if samples.len() == 19));
    }

    #[test]
    fn range_validation() {
        let curve = MomentCurve::new(1000, 1).unwrap();
        assert!(minimize_moment(MomentEvaluator::Empirical(&curve), (0.5, 4.0)).is_err());
        assert!(minimize_alt(1000, 30, (0.0, 10.0)).is_err());
        assert!(minimize_alt(1000, 30, (1.0, 17.0)).is_err());
        let r = minimize_moment(MomentEvaluator::Empirical(&curve), (2.0, 2.0)).unwrap();
        assert_eq!(r.exponent_star, 2.0);
        assert_eq!(r.value, curve.normalized_sum(2.0));
    }
}
