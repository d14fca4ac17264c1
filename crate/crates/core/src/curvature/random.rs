//! Random curvature tensors in `Sym²_B(𝔤)`.
//!
//! A symmetric form supported on `𝔤` does not in general stay inside
//! `Sym²(𝔤)` after removing its Bianchi part, so subalgebra samples are drawn
//! from the kernel of the Bianchi map restricted to `Sym²(𝔤)` instead.

use nalgebra::{DMatrix, DVector};

use crate::curvature::decompose::kahler_decompose;
use crate::curvature::models::{hpm_operator, model, ModelKind};
use crate::curvature::tensor::{bianchi_defect_of, AlgebraicCurvatureTensor, CurvatureOperator};
use crate::error::Result;
use crate::holonomy::{AlgebraKind, HolonomySubalgebra};
use crate::linalg::null_space;
use crate::rng::{normal, Rng};
use crate::tensor::{pair_index, EuclideanSpace};

const KERNEL_TOL: f64 = 1e-10;

/// Orthonormal (Frobenius) basis of `Sym²_B` of a subspace of `Λ²V`.
#[derive(Debug, Clone)]
pub struct Sym2BSampler {
    space: EuclideanSpace,
    basis: Vec<DMatrix<f64>>,
}

impl Sym2BSampler {
    /// `cols` is an orthonormal basis (columns) of the subspace.
    pub fn new(space: &EuclideanSpace, cols: &DMatrix<f64>) -> Self {
        let d = space.dim();
        let k = cols.ncols();
        let mut sym = Vec::with_capacity(k * (k + 1) / 2);
        for a in 0..k {
            for b in a..k {
                let (xa, xb) = (cols.column(a), cols.column(b));
                let m = if a == b {
                    xa * xa.transpose()
                } else {
                    (xa * xb.transpose() + xb * xa.transpose()) * std::f64::consts::FRAC_1_SQRT_2
                };
                sym.push(m);
            }
        }
        let rows = d * d.saturating_sub(1) * d.saturating_sub(2) * d.saturating_sub(3) / 24;
        let mut a = DMatrix::zeros(rows, sym.len());
        for (c, m) in sym.iter().enumerate() {
            a.set_column(c, &DVector::from_vec(bianchi_defect_of(m, d)));
        }
        let kernel = null_space(&a, KERNEL_TOL);
        let basis = kernel
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&sym)
                    .fold(DMatrix::zeros(cols.nrows(), cols.nrows()), |acc, (c, m)| acc + m * *c)
            })
            .collect();
        Self {
            space: space.clone(),
            basis,
        }
    }

    pub fn for_algebra(g: &HolonomySubalgebra) -> Self {
        Self::new(g.space(), g.coefficient_matrix())
    }

    /// Hyper-Kähler tensors: `Sym²_B(𝔰𝔭(m))`.
    pub fn hyperkahler(space: &EuclideanSpace) -> Result<Self> {
        let g = HolonomySubalgebra::build(space, AlgebraKind::SpSp1)?;
        let k = g.dim() - 3;
        let cols = g.coefficient_matrix().columns(0, k).into_owned();
        Ok(Self::new(space, &cols))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    /// Standard Gaussian in the kernel coordinates.
    pub fn sample(&self, rng: &mut Rng) -> CurvatureOperator {
        let n = self.basis.first().map_or(0, DMatrix::nrows);
        let m = self
            .basis
            .iter()
            .fold(DMatrix::zeros(n, n), |acc, b| acc + b * normal(rng));
        CurvatureOperator::from_matrix_unchecked(&self.space, m)
    }

    pub fn sample_tensor(&self, rng: &mut Rng) -> AlgebraicCurvatureTensor {
        AlgebraicCurvatureTensor::from_operator_unchecked(&self.sample(rng))
    }
}

/// Gaussian symmetric operator with its `Λ⁴` part removed.
pub fn random_curvature(space: &EuclideanSpace, rng: &mut Rng) -> AlgebraicCurvatureTensor {
    let d = space.dim();
    let n = d * (d - 1) / 2;
    let mut m = DMatrix::from_fn(n, n, |_, _| normal(rng));
    m = (&m + m.transpose()) * 0.5;
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                for l in k + 1..d {
                    let ij = pair_index(d, i, j);
                    let kl = pair_index(d, k, l);
                    let ik = pair_index(d, i, k);
                    let jl = pair_index(d, j, l);
                    let il = pair_index(d, i, l);
                    let jk = pair_index(d, j, k);
                    let delta = (m[(ij, kl)] - m[(ik, jl)] + m[(il, jk)]) / 3.0;
                    for (a, b, s) in [(ij, kl, 1.0), (ik, jl, -1.0), (il, jk, 1.0)] {
                        m[(a, b)] -= s * delta;
                        m[(b, a)] = m[(a, b)];
                    }
                }
            }
        }
    }
    AlgebraicCurvatureTensor::from_operator_unchecked(&CurvatureOperator::from_matrix_unchecked(space, m))
}

pub fn random_kahler(space: &EuclideanSpace, rng: &mut Rng) -> Result<AlgebraicCurvatureTensor> {
    let g = HolonomySubalgebra::build(space, AlgebraKind::U)?;
    Ok(Sym2BSampler::for_algebra(&g).sample_tensor(rng))
}

pub fn random_hyperkahler(space: &EuclideanSpace, rng: &mut Rng) -> Result<AlgebraicCurvatureTensor> {
    Ok(Sym2BSampler::hyperkahler(space)?.sample_tensor(rng))
}

/// Bochner part of a random Kähler tensor plus the CHSC model with scalar
/// curvature `scal`.
pub fn random_einstein_kahler(space: &EuclideanSpace, rng: &mut Rng, scal: f64) -> Result<AlgebraicCurvatureTensor> {
    let b = kahler_decompose(&random_kahler(space, rng)?)?.bochner;
    let n = space.complex_dim() as f64;
    let chsc = model(ModelKind::Chsc(scal / (n * (n + 1.0))), space)?;
    b.add(&chsc)
}

/// `c·Rm_{ℍPᵐ}` plus a random hyper-Kähler tensor.
pub fn random_quaternion_kahler(space: &EuclideanSpace, rng: &mut Rng, hp_coefficient: f64) -> Result<AlgebraicCurvatureTensor> {
    let hp = AlgebraicCurvatureTensor::from_operator_unchecked(&hpm_operator(space)?);
    hp.scaled(hp_coefficient).add(&random_hyperkahler(space, rng)?)
}
