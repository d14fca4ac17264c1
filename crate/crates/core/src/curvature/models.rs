use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curvature::tensor::{induced_on_bivectors, AlgebraicCurvatureTensor, CurvatureOperator};
use crate::error::{check_dim, Error, Result};
use crate::holonomy::structure_bivector;
use crate::tensor::{bivector_dim, ComplexTensor, EuclideanSpace};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "c", rename_all = "snake_case")]
pub enum ModelKind {
    Flat,
    /// Constant sectional curvature `c`.
    ConstantSectional(f64),
    /// Constant holomorphic sectional curvature `c`.
    Chsc(f64),
    /// Quaternionic projective space, normalized by the displayed operator.
    Hpm,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Flat => write!(f, "flat"),
            Self::ConstantSectional(c) => write!(f, "constant_sectional({c})"),
            Self::Chsc(c) => write!(f, "chsc({c})"),
            Self::Hpm => write!(f, "hpm"),
        }
    }
}

pub fn model(kind: ModelKind, space: &EuclideanSpace) -> Result<AlgebraicCurvatureTensor> {
    let d = space.dim();
    match kind {
        ModelKind::Flat => Ok(AlgebraicCurvatureTensor::zeros(space)),
        ModelKind::ConstantSectional(c) => {
            let n = bivector_dim(d);
            let op = CurvatureOperator::from_matrix_unchecked(space, DMatrix::identity(n, n) * c);
            Ok(AlgebraicCurvatureTensor::from_operator_unchecked(&op))
        }
        ModelKind::Chsc(c) => {
            let base = kahler_base(space)?;
            Ok(AlgebraicCurvatureTensor::from_tensor_unchecked(space, base.scale_real(c / 4.0)))
        }
        ModelKind::Hpm => Ok(AlgebraicCurvatureTensor::from_operator_unchecked(&hpm_operator(space)?)),
    }
}

/// `(h◯∧k)(X,Y,Z,W) = h(X,Z)k(Y,W) + h(Y,W)k(X,Z) − h(X,W)k(Y,Z) − h(Y,Z)k(X,W)`.
pub fn kulkarni_nomizu(h: &ComplexTensor, k: &ComplexTensor) -> Result<ComplexTensor> {
    for t in [h, k] {
        if t.rank() != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: t.rank(),
            });
        }
    }
    check_dim(h.dim(), k.dim())?;
    let d = h.dim();
    let at = |t: &ComplexTensor, a: usize, b: usize| t.data()[a * d + b];
    Ok(ComplexTensor::from_fn(d, 4, |ix| {
        let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
        at(h, x, z) * at(k, y, w) + at(h, y, w) * at(k, x, z)
            - at(h, x, w) * at(k, y, z)
            - at(h, y, z) * at(k, x, w)
    }))
}

pub fn metric_tensor(d: usize) -> ComplexTensor {
    ComplexTensor::from_fn(d, 2, |ix| {
        Complex64::new(if ix[0] == ix[1] { 1.0 } else { 0.0 }, 0.0)
    })
}

/// `½ g◯∧g + ½ ω◯∧ω + 2 ω⊗ω`, the CHSC model with `c = 4`.
pub fn kahler_base(space: &EuclideanSpace) -> Result<ComplexTensor> {
    let omega = ComplexTensor::from_matrix(&space.kahler_form()?);
    let g = metric_tensor(space.dim());
    let gg = kulkarni_nomizu(&g, &g)?;
    let ww = kulkarni_nomizu(&omega, &omega)?;
    let wxw = omega.outer(&omega)?;
    Ok(&(&(&gg * 0.5) + &(&ww * 0.5)) + &(&wxw * 2.0))
}

/// `𝔯(X∧Y) = X∧Y + IX∧IY + JX∧JY + KX∧KY + 2Σ_Q g(X∧Y, ω_Q)ω_Q`.
pub fn hpm_operator(space: &EuclideanSpace) -> Result<CurvatureOperator> {
    let ijk = space.quaternionic_structure()?;
    let n = bivector_dim(space.dim());
    let mut m = DMatrix::<f64>::identity(n, n);
    for q in ijk {
        m += induced_on_bivectors(q);
        let w = structure_bivector(q);
        m += &w * w.transpose() * 2.0;
    }
    CurvatureOperator::new(space, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kn_of_metric_on_e1e2() {
        let g = metric_tensor(4);
        let gg = kulkarni_nomizu(&g, &g).unwrap();
        assert_eq!(gg.get(&[0, 1, 0, 1]).re, 2.0);
    }

    #[test]
    fn half_kn_metric_is_unit_sectional() {
        for d in [4, 6] {
            let s = EuclideanSpace::real(d).unwrap();
            let g = metric_tensor(d);
            let half = &kulkarni_nomizu(&g, &g).unwrap() * 0.5;
            let unit = model(ModelKind::ConstantSectional(1.0), &s).unwrap();
            assert!(half.max_abs_diff(unit.tensor()).unwrap() < 1e-14);
        }
    }

    #[test]
    fn kn_zero_and_rank_errors() {
        let z = ComplexTensor::zeros(4, 2);
        let g = metric_tensor(4);
        assert_eq!(kulkarni_nomizu(&z, &g).unwrap().max_abs(), 0.0);
        assert!(kulkarni_nomizu(&ComplexTensor::zeros(4, 3), &g).is_err());
    }

    #[test]
    fn chsc_has_holomorphic_sectional_curvature_c() {
        let s = EuclideanSpace::kahler(2).unwrap();
        let rm = model(ModelKind::Chsc(3.0), &s).unwrap();
        // H(e1) = Rm(e1, Je1, e1, Je1) = Rm(0,1,0,1)
        assert!((rm.get(0, 1, 0, 1) - 3.0).abs() < 1e-14);
        assert!((rm.scalar() - 2.0 * 3.0 * 3.0).abs() < 1e-12);
    }

    #[test]
    fn structure_errors() {
        let s = EuclideanSpace::real(4).unwrap();
        assert!(model(ModelKind::Chsc(1.0), &s).is_err());
        assert!(model(ModelKind::Hpm, &s).is_err());
    }
}
