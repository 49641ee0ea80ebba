//! Density constants of the moment-method bounds.

pub mod dense;
pub mod mertens;
pub mod minimize;
pub mod moments;
pub mod products;
pub mod wirsing;

pub use dense::{dense_counterexample_primes, DenseSegment};
pub use mertens::{mertens_limit, mertens_ratio};
pub use minimize::{
    golden_section_min, minimize_alt, minimize_moment, CurvePoint, MinimizerReport, Minimum,
    MomentEvaluator,
};
pub use moments::{
    moment_constant_integer, moment_sum_empirical, DivisorTotientTable, IntegerMomentSpline,
    MomentCurve, MomentPoint,
};
pub use products::{
    alt_bound, alt_bound_with, f_alpha, first_moment_constant, p1_p2_products, p1_product,
    p2_product, second_moment_constant, AltBound, OddPrimes, ProductEstimate, DEFAULT_DEPTH,
};
pub use wirsing::{wirsing_check, WirsingCheck};
