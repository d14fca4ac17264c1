use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{check_dim, Error, Result};
use crate::holonomy::HolonomySubalgebra;
use crate::linalg::spectral_norm;
use crate::tensor::json::{convention_of, TensorFile, FLAG_KAHLER, FLAG_QUATERNION};
use crate::tensor::{bivector_dim, pair_index, pairs, Bivector, ComplexTensor, EuclideanSpace};
use crate::tolerance::ABS_TOL;

pub const KIND_CURVATURE: &str = "curvature";

/// Sign and basis position of `e_i∧e_j`, `None` when `i = j`.
fn signed_pair(d: usize, i: usize, j: usize) -> Option<(f64, usize)> {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => Some((1.0, pair_index(d, i, j))),
        Greater => Some((-1.0, pair_index(d, j, i))),
        Equal => None,
    }
}

/// Matrix of `Λ²A` on the `e_i∧e_j` basis: column `a` holds `Ae_i∧Ae_j`.
pub fn induced_on_bivectors(a: &DMatrix<f64>) -> DMatrix<f64> {
    let d = a.nrows();
    let ps = pairs(d);
    let mut out = DMatrix::zeros(ps.len(), ps.len());
    for (col, &(i, j)) in ps.iter().enumerate() {
        let x = a.column(i);
        let y = a.column(j);
        for (row, &(k, l)) in ps.iter().enumerate() {
            out[(row, col)] = x[k] * y[l] - x[l] * y[k];
        }
    }
    out
}

/// Matrix of `ad_L = [L, ·]` on the `e_i∧e_j` basis.
pub fn adjoint_matrix(l: &Bivector) -> DMatrix<f64> {
    let d = l.dim();
    let m = l.matrix();
    let ps = pairs(d);
    let mut out = DMatrix::zeros(ps.len(), ps.len());
    for (col, &(i, j)) in ps.iter().enumerate() {
        let e = Bivector::basis(d, i, j).matrix();
        let br = Bivector::from_matrix(&(&m * &e - &e * &m));
        out.set_column(col, &br.to_vector());
    }
    out
}

fn scale_of(m: &DMatrix<f64>) -> f64 {
    m.abs().max().max(1.0)
}

/// Symmetric operator `𝔯` on `Λ²V`, stored as `R[a,b] = Rm(e_i,e_j,e_k,e_l)`
/// for `a = (i,j)`, `b = (k,l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureOperator {
    space: EuclideanSpace,
    matrix: DMatrix<f64>,
}

impl CurvatureOperator {
    pub fn new(space: &EuclideanSpace, matrix: DMatrix<f64>) -> Result<Self> {
        let n = bivector_dim(space.dim());
        check_dim(n, matrix.nrows())?;
        check_dim(n, matrix.ncols())?;
        let asym = (&matrix - matrix.transpose()).abs().max();
        if asym > ABS_TOL * scale_of(&matrix) {
            return Err(Error::SymmetryViolation {
                what: "operator symmetry",
                residual: asym,
            });
        }
        Ok(Self::from_matrix_unchecked(space, matrix))
    }

    pub(crate) fn from_matrix_unchecked(space: &EuclideanSpace, matrix: DMatrix<f64>) -> Self {
        let sym = (&matrix + matrix.transpose()) * 0.5;
        Self {
            space: space.clone(),
            matrix: sym,
        }
    }

    pub fn zeros(space: &EuclideanSpace) -> Self {
        let n = bivector_dim(space.dim());
        Self::from_matrix_unchecked(space, DMatrix::zeros(n, n))
    }

    pub fn space(&self) -> &EuclideanSpace {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, l: &Bivector) -> Result<Bivector> {
        check_dim(self.space.dim(), l.dim())?;
        Ok(Bivector::from_vector(l.dim(), &(&self.matrix * l.to_vector())))
    }

    /// `g(𝔯(A), B)`.
    pub fn form(&self, a: &Bivector, b: &Bivector) -> Result<f64> {
        Ok(self.apply(a)?.inner(b)?)
    }

    /// `|R|²` of the bilinear form on `Λ²V` (squared Frobenius norm).
    pub fn norm_sq(&self) -> f64 {
        self.matrix.norm_squared()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_matrix_unchecked(&self.space, &self.matrix * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.space.dim(), other.space.dim())?;
        Ok(Self::from_matrix_unchecked(&self.space, &self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(-1.0))
    }

    /// `Rm(i,j,k,l) − Rm(i,k,j,l) + Rm(i,l,j,k)` over `i<j<k<l`.
    ///
    /// For tensors with the pair symmetries this is three times the first
    /// Bianchi sum, and it vanishes exactly on `Sym²_B`.
    pub fn bianchi_defect(&self) -> Vec<f64> {
        bianchi_defect_of(&self.matrix, self.space.dim())
    }

    pub fn bianchi_residual(&self) -> f64 {
        self.bianchi_defect()
            .iter()
            .fold(0.0, |acc, x| acc.max(x.abs() / 3.0))
    }

    /// `|Rm(JX,JY,Z,W) − Rm(X,Y,Z,W)|` maximized over basis entries.
    pub fn kahler_residual(&self) -> Result<f64> {
        let q = induced_on_bivectors(self.space.complex_structure()?);
        Ok((q.transpose() * &self.matrix - &self.matrix).abs().max())
    }

    /// Spectral norm of `𝔯 ∘ (Id − P_𝔤)`.
    pub fn leakage(&self, g: &HolonomySubalgebra) -> Result<f64> {
        check_dim(self.space.dim(), g.space().dim())?;
        let n = self.matrix.nrows();
        let perp = DMatrix::<f64>::identity(n, n) - g.projector();
        Ok(spectral_norm(&(&self.matrix * perp)))
    }

    /// `L·R` for the induced action on bilinear forms: `−(ad_Lᵀ R + R ad_L)`.
    pub fn act(&self, l: &Bivector) -> Result<Self> {
        check_dim(self.space.dim(), l.dim())?;
        let ad = adjoint_matrix(l);
        let m = -(ad.transpose() * &self.matrix + &self.matrix * ad);
        Ok(Self::from_matrix_unchecked(&self.space, m))
    }

    /// Converts to the `(0,4)` tensor after checking the first Bianchi identity.
    pub fn to_tensor(&self) -> Result<AlgebraicCurvatureTensor> {
        AlgebraicCurvatureTensor::from_operator(self)
    }
}

pub(crate) fn bianchi_defect_of(m: &DMatrix<f64>, d: usize) -> Vec<f64> {
    let mut out = Vec::new();
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
                    out.push(m[(ij, kl)] - m[(ik, jl)] + m[(il, jk)]);
                }
            }
        }
    }
    out
}

/// Symmetry residuals of a rank-4 tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryResiduals {
    pub antisymmetry: f64,
    pub pair_symmetry: f64,
    pub bianchi: f64,
    pub imaginary: f64,
}

impl SymmetryResiduals {
    pub fn max(&self) -> f64 {
        self.antisymmetry
            .max(self.pair_symmetry)
            .max(self.bianchi)
            .max(self.imaginary)
    }
}

pub fn symmetry_residuals(t: &ComplexTensor) -> SymmetryResiduals {
    let d = t.dim();
    let mut r = SymmetryResiduals {
        antisymmetry: 0.0,
        pair_symmetry: 0.0,
        bianchi: 0.0,
        imaginary: t.max_imag(),
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let v = t.get(&[i, j, k, l]);
                    r.antisymmetry = r
                        .antisymmetry
                        .max((v + t.get(&[j, i, k, l])).norm())
                        .max((v + t.get(&[i, j, l, k])).norm());
                    r.pair_symmetry = r.pair_symmetry.max((v - t.get(&[k, l, i, j])).norm());
                    let cyc = v + t.get(&[j, k, i, l]) + t.get(&[k, i, j, l]);
                    r.bianchi = r.bianchi.max(cyc.norm());
                }
            }
        }
    }
    r
}

/// Algebraic curvature tensor with its operator avatar.
#[derive(Debug, Clone)]
pub struct AlgebraicCurvatureTensor {
    rm: ComplexTensor,
    op: CurvatureOperator,
}

impl AlgebraicCurvatureTensor {
    /// Validates the curvature symmetries and realness.
    pub fn new(space: &EuclideanSpace, rm: ComplexTensor) -> Result<Self> {
        check_dim(space.dim(), rm.dim())?;
        if rm.rank() != 4 {
            return Err(Error::RankMismatch {
                expected: 4,
                found: rm.rank(),
            });
        }
        let tol = ABS_TOL * rm.max_abs().max(1.0);
        let res = symmetry_residuals(&rm);
        for (what, residual) in [
            ("real components", res.imaginary),
            ("antisymmetry", res.antisymmetry),
            ("pair symmetry", res.pair_symmetry),
            ("first Bianchi identity", res.bianchi),
        ] {
            if residual > tol {
                return Err(Error::SymmetryViolation { what, residual });
            }
        }
        Ok(Self::from_tensor_unchecked(space, rm))
    }

    pub(crate) fn from_tensor_unchecked(space: &EuclideanSpace, rm: ComplexTensor) -> Self {
        let d = space.dim();
        let ps = pairs(d);
        let n = ps.len();
        let m = DMatrix::from_fn(n, n, |a, b| {
            let (i, j) = ps[a];
            let (k, l) = ps[b];
            rm.get(&[i, j, k, l]).re
        });
        let op = CurvatureOperator::from_matrix_unchecked(space, m);
        // rebuild so the stored tensor is exactly real and symmetric
        let rm = tensor_from_matrix(op.matrix(), d);
        Self { rm, op }
    }

    /// Inverse of [`Self::to_operator`]; checks the first Bianchi identity.
    pub fn from_operator(op: &CurvatureOperator) -> Result<Self> {
        let residual = op.bianchi_residual();
        if residual > ABS_TOL * scale_of(op.matrix()) {
            return Err(Error::SymmetryViolation {
                what: "first Bianchi identity",
                residual,
            });
        }
        Ok(Self::from_operator_unchecked(op))
    }

    pub(crate) fn from_operator_unchecked(op: &CurvatureOperator) -> Self {
        Self {
            rm: tensor_from_matrix(op.matrix(), op.space().dim()),
            op: op.clone(),
        }
    }

    pub fn zeros(space: &EuclideanSpace) -> Self {
        Self::from_operator_unchecked(&CurvatureOperator::zeros(space))
    }

    pub fn space(&self) -> &EuclideanSpace {
        self.op.space()
    }

    pub fn dim(&self) -> usize {
        self.op.space().dim()
    }

    pub fn tensor(&self) -> &ComplexTensor {
        &self.rm
    }

    pub fn operator(&self) -> &CurvatureOperator {
        &self.op
    }

    pub fn to_operator(&self) -> CurvatureOperator {
        self.op.clone()
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.rm.get(&[i, j, k, l]).re
    }

    /// Full-tensor `|Rm|²`, equal to `4|R|²`.
    pub fn norm_sq(&self) -> f64 {
        self.rm.norm_sq()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_operator_unchecked(&self.op.scaled(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_operator_unchecked(&self.op.add(&other.op)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_operator_unchecked(&self.op.sub(&other.op)?))
    }

    /// `Ric(Y,W) = Σ_i Rm(e_i,Y,e_i,W)`.
    pub fn ricci(&self) -> DMatrix<f64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |y, w| (0..d).map(|i| self.get(i, y, i, w)).sum())
    }

    pub fn scalar(&self) -> f64 {
        self.ricci().trace()
    }

    /// `R̊ic = Ric − (scal/d)·g`.
    pub fn tf_ricci(&self) -> DMatrix<f64> {
        let d = self.dim();
        let ric = self.ricci();
        let s = ric.trace() / d as f64;
        ric - DMatrix::<f64>::identity(d, d) * s
    }

    /// `ρ(X,Y) = Ric(JX,Y)`, i.e. `ρ = Jᵀ·Ric`.
    pub fn ricci_form(&self) -> Result<DMatrix<f64>> {
        let j = self.space().complex_structure()?;
        Ok(j.transpose() * self.ricci())
    }

    /// `ρ₀ = ρ − (scal/2n)·ω`.
    pub fn primitive_ricci_form(&self) -> Result<DMatrix<f64>> {
        let rho = self.ricci_form()?;
        let omega = self.space().kahler_form()?;
        let s = self.scalar() / self.dim() as f64;
        Ok(rho - omega * s)
    }

    pub fn kahler_residual(&self) -> Result<f64> {
        self.op.kahler_residual()
    }

    /// Whether `Rm(JX,JY,Z,W) = Rm(X,Y,Z,W)` holds to `ABS_TOL` relative to scale.
    pub fn is_kahler(&self) -> bool {
        self.kahler_residual()
            .map(|r| r <= ABS_TOL * scale_of(self.op.matrix()))
            .unwrap_or(false)
    }

    /// Leakage off `𝔰𝔭(m)⊕𝔰𝔭(1)`, if the space is quaternionic with `m ≥ 2`.
    pub fn is_quaternion_kahler(&self) -> bool {
        use crate::holonomy::AlgebraKind;
        HolonomySubalgebra::build(self.space(), AlgebraKind::SpSp1)
            .and_then(|g| self.op.leakage(&g))
            .map(|r| r <= ABS_TOL * scale_of(self.op.matrix()))
            .unwrap_or(false)
    }

    pub fn to_file(&self) -> TensorFile {
        let mut f = TensorFile::from_tensor(&self.rm, convention_of(self.space()));
        f.kind = Some(KIND_CURVATURE.into());
        if self.space().is_block_convention() && self.is_kahler() {
            f.flags.push(FLAG_KAHLER.into());
        }
        if self.space().has_quaternionic_structure() && self.is_quaternion_kahler() {
            f.flags.push(FLAG_QUATERNION.into());
        }
        f
    }

    /// Reads a curvature file; declared flags are validated.
    pub fn from_file(file: &TensorFile) -> Result<Self> {
        if let Some(kind) = &file.kind {
            if kind != KIND_CURVATURE {
                return Err(Error::Format(format!("expected kind \"curvature\", found {kind:?}")));
            }
        }
        let space = file.space()?;
        let rm = Self::new(&space, file.to_tensor()?)?;
        if file.has_flag(FLAG_KAHLER) && !rm.is_kahler() {
            return Err(Error::SymmetryViolation {
                what: "J-invariance declared by the kahler flag",
                residual: rm.kahler_residual()?,
            });
        }
        if file.has_flag(FLAG_QUATERNION) && !rm.is_quaternion_kahler() {
            return Err(Error::Format(
                "quaternion flag declared but the operator leaks off sp(m)⊕sp(1)".into(),
            ));
        }
        Ok(rm)
    }
}

pub(crate) fn tensor_from_matrix(m: &DMatrix<f64>, d: usize) -> ComplexTensor {
    ComplexTensor::from_fn(d, 4, |ix| {
        match (signed_pair(d, ix[0], ix[1]), signed_pair(d, ix[2], ix[3])) {
            (Some((s1, a)), Some((s2, b))) => Complex64::new(s1 * s2 * m[(a, b)], 0.0),
            _ => Complex64::new(0.0, 0.0),
        }
    })
}
