use nalgebra::DMatrix;
use serde::Serialize;

use crate::curvature::tensor::CurvatureOperator;
use crate::error::{check_dim, Result};
use crate::holonomy::{AlgebraKind, HolonomySubalgebra};
use crate::linalg::sorted_symmetric_eigen;

/// Eigenvalues of `[g(𝔯(Ξ_α), Ξ_β)]`, ascending, with the leakage of `𝔯` off
/// `𝔤` reported alongside.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictedSpectrum {
    pub algebra: AlgebraKind,
    pub eigenvalues: Vec<f64>,
    pub leakage: f64,
    /// Columns are eigenvectors in the `Ξ_α` coordinates.
    #[serde(skip)]
    pub eigenvectors: DMatrix<f64>,
}

pub fn gram_block(op: &CurvatureOperator, g: &HolonomySubalgebra) -> Result<DMatrix<f64>> {
    check_dim(op.space().dim(), g.space().dim())?;
    let xi = g.coefficient_matrix();
    Ok(xi.transpose() * op.matrix() * xi)
}

pub fn restricted_spectrum(op: &CurvatureOperator, g: &HolonomySubalgebra) -> Result<RestrictedSpectrum> {
    let gram = gram_block(op, g)?;
    let (eigenvalues, eigenvectors) = sorted_symmetric_eigen(&gram);
    Ok(RestrictedSpectrum {
        algebra: g.kind(),
        eigenvalues,
        leakage: op.leakage(g)?,
        eigenvectors,
    })
}

/// Frobenius norm of the Gram block of `𝔯` on `𝔤^⊥`.
pub fn complement_block_norm(op: &CurvatureOperator, g: &HolonomySubalgebra) -> Result<f64> {
    check_dim(op.space().dim(), g.space().dim())?;
    let c = g.complement_basis();
    Ok((c.transpose() * op.matrix() * c).norm())
}
