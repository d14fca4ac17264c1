//! Numerical tolerances shared across the crate.

use serde::{Deserialize, Serialize};

/// Absolute tolerance for equality checks on unit-scale data.
pub const ABS_TOL: f64 = 1e-10;
/// Relative tolerance for equality checks on data of arbitrary scale.
pub const REL_TOL: f64 = 1e-9;
/// Cut-off below which a Gram–Schmidt residual counts as linearly dependent.
pub const DEPENDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: ABS_TOL,
            rel: REL_TOL,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    /// `|a - b| <= max(abs, rel * max(|a|, |b|))`.
    pub fn close(&self, a: f64, b: f64) -> bool {
        let scale = a.abs().max(b.abs());
        (a - b).abs() <= self.abs.max(self.rel * scale)
    }
}

/// `|a - b| / max(|a|, |b|)`, or the absolute gap when both are below `floor`.
pub fn relative_deviation(a: f64, b: f64, floor: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale <= floor {
        (a - b).abs()
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn close_uses_larger_of_abs_and_rel() {
        let tol = Tolerance::default();
        assert!(tol.close(1.0, 1.0 + 5e-11));
        assert!(!tol.close(1.0, 1.0 + 1e-8));
        assert!(tol.close(1e6, 1e6 + 1e-4));
    }

    #[test]
    fn relative_deviation_floor() {
        assert_eq!(relative_deviation(0.0, 1e-14, 1e-12), 1e-14);
        assert!((relative_deviation(2.0, 1.0, 1e-12) - 0.5).abs() < 1e-15);
    }
}
