use nalgebra::DMatrix;
use serde::Serialize;

use crate::curvature::models::{hpm_operator, kahler_base, kulkarni_nomizu, metric_tensor};
use crate::curvature::tensor::AlgebraicCurvatureTensor;
use crate::error::{Error, Result};
use crate::holonomy::{AlgebraKind, HolonomySubalgebra};
use crate::tensor::json::TensorFile;
use crate::tensor::ComplexTensor;
use crate::tolerance::ABS_TOL;

/// `Rm = scalar_part + ricci_part + bochner` with `m` read as the complex
/// dimension `n`.
#[derive(Debug, Clone)]
pub struct KahlerDecomposition {
    pub scalar_part: AlgebraicCurvatureTensor,
    pub ricci_part: AlgebraicCurvatureTensor,
    pub bochner: AlgebraicCurvatureTensor,
    pub scal: f64,
    pub tf_ricci: DMatrix<f64>,
    pub ricci_form: DMatrix<f64>,
    pub primitive_ricci_form: DMatrix<f64>,
}

fn require_kahler(rm: &AlgebraicCurvatureTensor) -> Result<()> {
    let residual = rm.kahler_residual()?;
    if rm.is_kahler() {
        Ok(())
    } else {
        Err(Error::SymmetryViolation {
            what: "J-invariance",
            residual,
        })
    }
}

pub fn kahler_decompose(rm: &AlgebraicCurvatureTensor) -> Result<KahlerDecomposition> {
    require_kahler(rm)?;
    let space = rm.space();
    let d = space.dim();
    let n = space.complex_dim() as f64;
    let scal = rm.scalar();
    let tf_ricci = rm.tf_ricci();
    let ricci_form = rm.ricci_form()?;
    let rho0 = rm.primitive_ricci_form()?;

    let base = kahler_base(space)?;
    let scalar_part = base.scale_real(scal / (4.0 * n * (n + 1.0)));

    let g = metric_tensor(d);
    let omega = ComplexTensor::from_matrix(&space.kahler_form()?);
    let ric0 = ComplexTensor::from_matrix(&tf_ricci);
    let r0 = ComplexTensor::from_matrix(&rho0);
    let mut ricci_part = kulkarni_nomizu(&ric0, &g)?;
    ricci_part = &ricci_part + &kulkarni_nomizu(&r0, &omega)?;
    let cross = &r0.outer(&omega)? + &omega.outer(&r0)?;
    ricci_part = &ricci_part + &(&cross * 2.0);
    let ricci_part = ricci_part.scale_real(1.0 / (2.0 * (n + 2.0)));

    let scalar_part = AlgebraicCurvatureTensor::from_tensor_unchecked(space, scalar_part);
    let ricci_part = AlgebraicCurvatureTensor::from_tensor_unchecked(space, ricci_part);
    let bochner = rm.sub(&scalar_part)?.sub(&ricci_part)?;
    Ok(KahlerDecomposition {
        scalar_part,
        ricci_part,
        bochner,
        scal,
        tf_ricci,
        ricci_form,
        primitive_ricci_form: rho0,
    })
}

/// `max |Σ_i B(e_i,Y,e_i,W)|` and `max |Σ_i B(e_i,Je_i,Z,W)|`.
pub fn bochner_traces(b: &AlgebraicCurvatureTensor) -> Result<(f64, f64)> {
    let d = b.dim();
    let j = b.space().complex_structure()?;
    let ricci = b.ricci().abs().max();
    let mut jtrace = 0.0_f64;
    for z in 0..d {
        for w in 0..d {
            let mut s = 0.0;
            for i in 0..d {
                for k in 0..d {
                    s += j[(k, i)] * b.get(i, k, z, w);
                }
            }
            jtrace = jtrace.max(s.abs());
        }
    }
    Ok((ricci, jtrace))
}

impl KahlerDecomposition {
    /// `|scalar_part + ricci_part + bochner − Rm|` maximized over entries.
    pub fn reassembly_error(&self, rm: &AlgebraicCurvatureTensor) -> Result<f64> {
        let sum = self.scalar_part.add(&self.ricci_part)?.add(&self.bochner)?;
        sum.tensor().max_abs_diff(rm.tensor())
    }

    pub fn export(&self) -> KahlerDecompositionFile {
        KahlerDecompositionFile {
            scal: self.scal,
            scalar_part: self.scalar_part.to_file(),
            ricci_part: self.ricci_part.to_file(),
            bochner: self.bochner.to_file(),
            tf_ricci: matrix_file(&self.tf_ricci),
            ricci_form: matrix_file(&self.ricci_form),
            primitive_ricci_form: matrix_file(&self.primitive_ricci_form),
        }
    }
}

fn matrix_file(m: &DMatrix<f64>) -> TensorFile {
    TensorFile::from_tensor(
        &ComplexTensor::from_matrix(m),
        crate::tensor::json::JConvention::Block,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct KahlerDecompositionFile {
    pub scal: f64,
    pub scalar_part: TensorFile,
    pub ricci_part: TensorFile,
    pub bochner: TensorFile,
    pub tf_ricci: TensorFile,
    pub ricci_form: TensorFile,
    pub primitive_ricci_form: TensorFile,
}

/// `Rm = hp_coefficient·Rm_{ℍPᵐ} + r0`.
#[derive(Debug, Clone)]
pub struct QuaternionDecomposition {
    pub hp_coefficient: f64,
    pub r0: AlgebraicCurvatureTensor,
    /// Operator leakage off `𝔰𝔭(m)⊕𝔰𝔭(1)`.
    pub leakage: f64,
    /// `max |Ric(r0)|`.
    pub r0_ricci_residual: f64,
}

pub fn quaternion_decompose(rm: &AlgebraicCurvatureTensor) -> Result<QuaternionDecomposition> {
    let space = rm.space();
    let g = HolonomySubalgebra::build(space, AlgebraKind::SpSp1)?;
    let leakage = rm.operator().leakage(&g)?;
    if leakage > ABS_TOL * rm.operator().matrix().abs().max().max(1.0) {
        return Err(Error::Leakage { leakage });
    }
    let m = space.dim() as f64 / 4.0;
    let hp_coefficient = rm.scalar() / (16.0 * m * (m + 2.0));
    let hp = AlgebraicCurvatureTensor::from_operator_unchecked(&hpm_operator(space)?);
    let r0 = rm.sub(&hp.scaled(hp_coefficient))?;
    let r0_ricci_residual = r0.ricci().abs().max();
    Ok(QuaternionDecomposition {
        hp_coefficient,
        r0,
        leakage,
        r0_ricci_residual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuaternionDecompositionFile {
    pub hp_coefficient: f64,
    pub leakage: f64,
    pub r0_ricci_residual: f64,
    pub r0: TensorFile,
}

impl QuaternionDecomposition {
    pub fn export(&self) -> QuaternionDecompositionFile {
        QuaternionDecompositionFile {
            hp_coefficient: self.hp_coefficient,
            leakage: self.leakage,
            r0_ricci_residual: self.r0_ricci_residual,
            r0: self.r0.to_file(),
        }
    }
}
