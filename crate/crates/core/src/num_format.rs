//! Stable float rendering for machine-readable output.

use serde::Serializer;

/// Rounds to 12 significant digits so repeated runs print identical text.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

pub fn serialize_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_f64(round12(*v)),
        None => s.serialize_none(),
    }
}
