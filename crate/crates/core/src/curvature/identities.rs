//! Sharp-norm identities for Kähler and quaternion-Kähler curvature.
//!
//! Norms of curvature tensors are reported in the bilinear-form convention
//! on `Λ²V`, i.e. the full-tensor norm divided by 4. The action of `𝔤` on the
//! `(0,4)` tensor and on the bilinear form agree, so `|Rm^𝔤|²` rescales the
//! same way.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::curvature::decompose::{kahler_decompose, quaternion_decompose};
use crate::curvature::spectrum::gram_block;
use crate::curvature::tensor::AlgebraicCurvatureTensor;
use crate::error::Result;
use crate::holonomy::{AlgebraKind, HolonomySubalgebra};
use crate::tolerance::relative_deviation;

/// Relative tolerance for the sharp-norm identities.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Floor under which both sides count as zero.
const ZERO_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct KahlerSharpReport {
    pub n: usize,
    /// `|Rm^𝔲|²`.
    pub sharp_norm_sq: f64,
    /// `|R̊m|²` with `R̊m = Rm − scalar_part` (CHSC part removed).
    pub chsc_free_norm_sq: f64,
    /// `|R̊m|²` read as the trace-free part of `𝔯` on `𝔲(n)`.
    pub operator_tracefree_norm_sq: f64,
    pub tf_ricci_norm_sq: f64,
    /// `4(n+1)|R̊m|² − 4|R̊ic|²` with the CHSC reading.
    pub rhs: f64,
    /// Same with the operator reading.
    pub rhs_operator_reading: f64,
    pub deviation: f64,
    pub pass: bool,
}

pub fn kahler_sharp_identity(rm: &AlgebraicCurvatureTensor) -> Result<KahlerSharpReport> {
    let dec = kahler_decompose(rm)?;
    let space = rm.space();
    let n = space.complex_dim();
    let g = HolonomySubalgebra::build(space, AlgebraKind::U)?;
    let sharp_norm_sq = g.sharp(rm.tensor())?.norm_sq() / 4.0;
    let chsc_free_norm_sq = rm.sub(&dec.scalar_part)?.norm_sq() / 4.0;
    let gram = gram_block(rm.operator(), &g)?;
    let k = gram.nrows();
    let tracefree = &gram - DMatrix::<f64>::identity(k, k) * (gram.trace() / k as f64);
    let operator_tracefree_norm_sq = tracefree.norm_squared();
    let tf_ricci_norm_sq = dec.tf_ricci.norm_squared();
    let c = 4.0 * (n as f64 + 1.0);
    let rhs = c * chsc_free_norm_sq - 4.0 * tf_ricci_norm_sq;
    let rhs_operator_reading = c * operator_tracefree_norm_sq - 4.0 * tf_ricci_norm_sq;
    let deviation = relative_deviation(sharp_norm_sq, rhs, ZERO_FLOOR);
    Ok(KahlerSharpReport {
        n,
        sharp_norm_sq,
        chsc_free_norm_sq,
        operator_tracefree_norm_sq,
        tf_ricci_norm_sq,
        rhs,
        rhs_operator_reading,
        deviation,
        pass: deviation <= IDENTITY_TOL,
    })
}

/// Coefficient `(4/3)(3m+4)` of the quaternionic identity as stated.
pub fn printed_quaternion_coefficient(m: usize) -> f64 {
    4.0 * (3.0 * m as f64 + 4.0) / 3.0
}

/// Coefficient `4(m+2)` observed numerically: half the Casimir eigenvalue
/// `8(m+2)` of `𝔰𝔭(m)` on `Sym⁴ℂ^{2m}`.
pub fn casimir_quaternion_coefficient(m: usize) -> f64 {
    4.0 * (m as f64 + 2.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuaternionSharpReport {
    pub m: usize,
    /// `|Rm^𝔰𝔭|²`.
    pub sharp_norm_sq: f64,
    /// `|R₀|²` of the hyper-Kähler component.
    pub r0_norm_sq: f64,
    pub printed_coefficient: f64,
    pub rhs: f64,
    /// `|Rm^𝔰𝔭|² / |R₀|²` (absent when `R₀ = 0`).
    pub observed_coefficient: Option<f64>,
    pub casimir_coefficient: f64,
    /// Relative deviation from the stated right-hand side.
    pub deviation: f64,
    pub pass: bool,
}

pub fn quaternion_sharp_identity(rm: &AlgebraicCurvatureTensor) -> Result<QuaternionSharpReport> {
    let dec = quaternion_decompose(rm)?;
    let space = rm.space();
    let m = space.dim() / 4;
    let g = HolonomySubalgebra::build(space, AlgebraKind::SpSp1)?;
    let sharp_norm_sq = g.sharp(rm.tensor())?.norm_sq() / 4.0;
    let r0_norm_sq = dec.r0.norm_sq() / 4.0;
    let printed_coefficient = printed_quaternion_coefficient(m);
    let rhs = printed_coefficient * r0_norm_sq;
    let observed_coefficient = (r0_norm_sq > ZERO_FLOOR).then(|| sharp_norm_sq / r0_norm_sq);
    let deviation = relative_deviation(sharp_norm_sq, rhs, ZERO_FLOOR);
    Ok(QuaternionSharpReport {
        m,
        sharp_norm_sq,
        r0_norm_sq,
        printed_coefficient,
        rhs,
        observed_coefficient,
        casimir_coefficient: casimir_quaternion_coefficient(m),
        deviation,
        pass: deviation <= IDENTITY_TOL,
    })
}
