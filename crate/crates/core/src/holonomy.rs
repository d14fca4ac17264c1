//! Holonomy subalgebras of `Λ²V ≅ 𝔰𝔬(V)` and the sharp map `T ↦ T^𝔤`.
//!
//! Bases are orthonormal in `Λ²V` and built deterministically: a canonical
//! spanning set is run through Gram–Schmidt in a fixed order.
//!
//! * `𝔰𝔬(d)`: `e_i∧e_j`, lexicographic.
//! * `𝔲(n)`: `{e_i∧e_j + Je_i∧Je_j}_{i<j}`, then `{e_i∧Je_i}`, then
//!   `{e_i∧Je_j + e_j∧Je_i}_{i<j}`.
//! * `𝔰𝔭(m)⊕𝔰𝔭(1)`: the unit-normalized `ω_I, ω_J, ω_K` are orthonormalized
//!   first, then the commutant projections `(A − IAI − JAJ − KAK)/4` of the
//!   `e_i∧e_j`. The stored order is the `m(2m+1)` elements of `𝔰𝔭(m)`
//!   followed by `ω_I, ω_J, ω_K`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::gram_schmidt;
use crate::rng::{normal, Rng};
use crate::tensor::{act_with_matrix, bivector_dim, pairs, Bivector, ComplexTensor, EuclideanSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    /// `𝔰𝔬(d)`
    So,
    /// `𝔲(n)`
    U,
    /// `𝔰𝔭(m)⊕𝔰𝔭(1)`
    #[serde(rename = "sp")]
    SpSp1,
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "so" => Ok(Self::So),
            "u" => Ok(Self::U),
            "sp" => Ok(Self::SpSp1),
            other => Err(Error::InvalidParameter(format!(
                "unknown algebra {other:?} (expected so, u or sp)"
            ))),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::So => "so",
            Self::U => "u",
            Self::SpSp1 => "sp",
        })
    }
}

/// Expected dimension of the algebra over a `d`-dimensional space.
pub fn expected_dim(kind: AlgebraKind, d: usize) -> usize {
    match kind {
        AlgebraKind::So => d * (d - 1) / 2,
        AlgebraKind::U => (d / 2) * (d / 2),
        AlgebraKind::SpSp1 => {
            let m = d / 4;
            m * (2 * m + 1) + 3
        }
    }
}

/// Coefficients of the 2-form `X∧Y ↦ g(AX, Y)` on the `e_i∧e_j` basis.
pub fn structure_bivector(a: &DMatrix<f64>) -> DVector<f64> {
    let d = a.nrows();
    DVector::from_iterator(
        d * (d - 1) / 2,
        pairs(d).into_iter().map(|(i, j)| a[(j, i)]),
    )
}

#[derive(Debug, Clone)]
pub struct HolonomySubalgebra {
    space: EuclideanSpace,
    kind: AlgebraKind,
    basis: Vec<Bivector>,
    /// `N × dim𝔤`, columns are basis coefficient vectors.
    coefficients: DMatrix<f64>,
    matrices: Vec<DMatrix<f64>>,
}

impl HolonomySubalgebra {
    pub fn build(space: &EuclideanSpace, kind: AlgebraKind) -> Result<Self> {
        let spanning = canonical_spanning_set(space, kind)?;
        Self::from_spanning_set(space, kind, &spanning)
    }

    /// Orthonormalizes `spanning` in the given order.
    ///
    /// For `SpSp1` the first three vectors must span `𝔰𝔭(1)`; they are moved
    /// to the end of the stored basis.
    pub fn from_spanning_set(
        space: &EuclideanSpace,
        kind: AlgebraKind,
        spanning: &[DVector<f64>],
    ) -> Result<Self> {
        let d = space.dim();
        for v in spanning {
            check_dim(bivector_dim(d), v.len())?;
        }
        let mut ortho = gram_schmidt(spanning);
        if kind == AlgebraKind::SpSp1 && ortho.len() >= 3 {
            ortho.rotate_left(3);
        }
        let expected = expected_dim(kind, d);
        if ortho.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "spanning set has rank {}, expected dim {kind} = {expected}",
                ortho.len()
            )));
        }
        let basis: Vec<Bivector> = ortho.iter().map(|v| Bivector::from_vector(d, v)).collect();
        let coefficients = DMatrix::from_columns(&ortho);
        let matrices = basis.iter().map(Bivector::matrix).collect();
        Ok(Self {
            space: space.clone(),
            kind,
            basis,
            coefficients,
            matrices,
        })
    }

    pub fn space(&self) -> &EuclideanSpace {
        &self.space
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Bivector] {
        &self.basis
    }

    /// Skew matrices `M(Ξ_α)`.
    pub fn basis_matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }

    /// `N × dim𝔤` matrix whose columns are the basis coefficient vectors.
    pub fn coefficient_matrix(&self) -> &DMatrix<f64> {
        &self.coefficients
    }

    /// Orthogonal projector onto `𝔤` inside `Λ²V`.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.coefficients * self.coefficients.transpose()
    }

    /// Orthonormal basis of `𝔤^⊥` (columns).
    pub fn complement_basis(&self) -> DMatrix<f64> {
        let n = self.coefficients.nrows();
        let mut vectors: Vec<DVector<f64>> =
            self.coefficients.column_iter().map(|c| c.into_owned()).collect();
        let k = vectors.len();
        vectors.extend((0..n).map(|i| {
            let mut e = DVector::zeros(n);
            e[i] = 1.0;
            e
        }));
        let ortho = gram_schmidt(&vectors);
        let rest: Vec<DVector<f64>> = ortho.into_iter().skip(k).collect();
        if rest.is_empty() {
            DMatrix::zeros(n, 0)
        } else {
            DMatrix::from_columns(&rest)
        }
    }

    pub fn project_bivector(&self, l: &Bivector) -> Result<Bivector> {
        check_dim(self.space.dim(), l.dim())?;
        let c = self.coefficients.transpose() * l.to_vector();
        Ok(Bivector::from_vector(l.dim(), &(&self.coefficients * c)))
    }

    /// Coordinates `⟨L, Ξ_α⟩`.
    pub fn coordinates(&self, l: &Bivector) -> Result<DVector<f64>> {
        check_dim(self.space.dim(), l.dim())?;
        Ok(self.coefficients.transpose() * l.to_vector())
    }

    pub fn element(&self, coords: &[f64]) -> Result<Bivector> {
        check_dim(self.dim(), coords.len())?;
        let v = &self.coefficients * DVector::from_column_slice(coords);
        Ok(Bivector::from_vector(self.space.dim(), &v))
    }

    /// Gaussian element of `𝔤` normalized to `|L| = 1`.
    pub fn random_unit_element(&self, rng: &mut Rng) -> Bivector {
        loop {
            let coords: Vec<f64> = (0..self.dim()).map(|_| normal(rng)).collect();
            let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-8 {
                let unit: Vec<f64> = coords.iter().map(|c| c / norm).collect();
                return self.element(&unit).expect("dimension fixed");
            }
        }
    }

    /// `T^𝔤` as the slices `Ξ_α T`.
    pub fn sharp(&self, t: &ComplexTensor) -> Result<SharpDecomposition> {
        if t.rank() > 0 {
            check_dim(self.space.dim(), t.dim())?;
        }
        let slices = self
            .matrices
            .iter()
            .map(|m| {
                if t.rank() == 0 {
                    ComplexTensor::zeros(t.dim(), 0)
                } else {
                    act_with_matrix(m, t)
                }
            })
            .collect();
        Ok(SharpDecomposition {
            basis: self.basis.clone(),
            slices,
        })
    }

    /// Residuals of the structural invariants.
    pub fn validate(&self) -> AlgebraDiagnostics {
        let k = self.dim();
        let gram = self.coefficients.transpose() * &self.coefficients;
        let gram_error = (gram - DMatrix::<f64>::identity(k, k)).abs().max();
        let proj = self.projector();
        let mut closure_error = 0.0_f64;
        for a in 0..k {
            for b in a + 1..k {
                let br = self.basis[a].bracket(&self.basis[b]).expect("same space");
                let v = br.to_vector();
                let off = (&v - &proj * &v).norm();
                closure_error = closure_error.max(off);
            }
        }
        let structure_error = match self.kind {
            AlgebraKind::So => 0.0,
            AlgebraKind::U => {
                let j = self.space.complex_structure().expect("checked at build");
                self.matrices
                    .iter()
                    .map(|m| (m * j - j * m).abs().max())
                    .fold(0.0, f64::max)
            }
            AlgebraKind::SpSp1 => {
                let ijk = self.space.quaternionic_structure().expect("checked at build");
                let sp_m = self.dim() - 3;
                self.matrices[..sp_m]
                    .iter()
                    .flat_map(|m| ijk.iter().map(move |q| (m * q - q * m).abs().max()))
                    .fold(0.0, f64::max)
            }
        };
        AlgebraDiagnostics {
            dim: k,
            gram_error,
            closure_error,
            structure_error,
        }
    }

    pub fn to_coefficient_lists(&self) -> Vec<Vec<f64>> {
        self.basis.iter().map(|b| b.coeffs().to_vec()).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraDiagnostics {
    pub dim: usize,
    /// `max |ΞᵀΞ − Id|`.
    pub gram_error: f64,
    /// Largest norm of `[Ξ_α, Ξ_β]` off the span.
    pub closure_error: f64,
    /// `max |[M(Ξ), J]|` for `𝔲(n)`, `max |[M(Ξ), I/J/K]|` over `𝔰𝔭(m)`.
    pub structure_error: f64,
}

/// Canonical spanning set in the documented order.
pub fn canonical_spanning_set(space: &EuclideanSpace, kind: AlgebraKind) -> Result<Vec<DVector<f64>>> {
    let d = space.dim();
    let nb = bivector_dim(d);
    let unit = |i: usize| {
        let mut v = DVector::zeros(d);
        v[i] = 1.0;
        v
    };
    match kind {
        AlgebraKind::So => Ok((0..nb)
            .map(|a| {
                let mut v = DVector::zeros(nb);
                v[a] = 1.0;
                v
            })
            .collect()),
        AlgebraKind::U => {
            let j = space.complex_structure()?;
            let wedge = |x: &DVector<f64>, y: &DVector<f64>| {
                Bivector::wedge(x, y).expect("same dim").to_vector()
            };
            let mut out = Vec::new();
            for (i, k) in pairs(d) {
                let (ei, ek) = (unit(i), unit(k));
                out.push(wedge(&ei, &ek) + wedge(&(j * &ei), &(j * &ek)));
            }
            for i in 0..d {
                let ei = unit(i);
                out.push(wedge(&ei, &(j * &ei)));
            }
            for (i, k) in pairs(d) {
                let (ei, ek) = (unit(i), unit(k));
                out.push(wedge(&ei, &(j * &ek)) + wedge(&ek, &(j * &ei)));
            }
            Ok(out)
        }
        AlgebraKind::SpSp1 => {
            let ijk = space.quaternionic_structure()?;
            let m = d / 4;
            if m < 2 {
                return Err(Error::InvalidParameter(format!(
                    "sp(m)⊕sp(1) needs m ≥ 2, got m = {m}"
                )));
            }
            let mut out: Vec<DVector<f64>> = ijk
                .iter()
                .map(|a| {
                    let w = structure_bivector(a);
                    let n = w.norm();
                    w / n
                })
                .collect();
            let [qi, qj, qk] = ijk;
            for a in 0..nb {
                let mut c = vec![0.0; nb];
                c[a] = 1.0;
                let mat = Bivector::from_coeffs(d, c).expect("sized").matrix();
                let avg = (&mat - qi * &mat * qi - qj * &mat * qj - qk * &mat * qk) * 0.25;
                out.push(Bivector::from_matrix(&avg).to_vector());
            }
            Ok(out)
        }
    }
}

/// The slices `Ξ_α T` of `T^𝔤 = Σ_α (Ξ_α T) ⊗ Ξ_α`.
#[derive(Debug, Clone)]
pub struct SharpDecomposition {
    basis: Vec<Bivector>,
    slices: Vec<ComplexTensor>,
}

impl SharpDecomposition {
    pub fn slices(&self) -> &[ComplexTensor] {
        &self.slices
    }

    /// `|T^𝔤|² = Σ_α |Ξ_α T|²` in the full-tensor norm.
    pub fn norm_sq(&self) -> f64 {
        self.slices.iter().map(ComplexTensor::norm_sq).sum()
    }

    pub fn slice_norms_sq(&self) -> Vec<f64> {
        self.slices.iter().map(ComplexTensor::norm_sq).collect()
    }

    /// `T^𝔤(e_{i₁}, …)` as complex coefficients on the `e_i∧e_j` basis.
    pub fn value_at(&self, idx: &[usize]) -> Vec<Complex64> {
        let nb = self.basis.first().map_or(0, |b| b.coeffs().len());
        let mut out = vec![Complex64::new(0.0, 0.0); nb];
        for (b, s) in self.basis.iter().zip(&self.slices) {
            let v = s.get(idx);
            for (o, c) in out.iter_mut().zip(b.coeffs()) {
                *o += v * c;
            }
        }
        out
    }

    /// `g(L, T^𝔤(e_{i₁}, …))`.
    pub fn pair_with(&self, l: &Bivector, idx: &[usize]) -> Complex64 {
        self.value_at(idx)
            .iter()
            .zip(l.coeffs())
            .map(|(v, c)| v * c)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_normal, seeded};
    use crate::tensor::act_on_tensor;

    #[test]
    fn dimensions() {
        let s6 = EuclideanSpace::real(6).unwrap();
        assert_eq!(HolonomySubalgebra::build(&s6, AlgebraKind::So).unwrap().dim(), 15);
        let c3 = EuclideanSpace::kahler(3).unwrap();
        assert_eq!(HolonomySubalgebra::build(&c3, AlgebraKind::U).unwrap().dim(), 9);
        let h2 = EuclideanSpace::quaternionic(2).unwrap();
        assert_eq!(HolonomySubalgebra::build(&h2, AlgebraKind::SpSp1).unwrap().dim(), 13);
        let h3 = EuclideanSpace::quaternionic(3).unwrap();
        assert_eq!(HolonomySubalgebra::build(&h3, AlgebraKind::SpSp1).unwrap().dim(), 24);
    }

    #[test]
    fn missing_structure_errors() {
        let s = EuclideanSpace::real(4).unwrap();
        assert!(matches!(
            HolonomySubalgebra::build(&s, AlgebraKind::U),
            Err(Error::MissingComplexStructure)
        ));
        assert!(matches!(
            HolonomySubalgebra::build(&EuclideanSpace::kahler(4).unwrap(), AlgebraKind::SpSp1),
            Err(Error::MissingQuaternionicStructure)
        ));
        assert!(HolonomySubalgebra::build(&EuclideanSpace::quaternionic(1).unwrap(), AlgebraKind::SpSp1).is_err());
    }

    #[test]
    fn invariants_hold() {
        for (space, kind) in [
            (EuclideanSpace::real(6).unwrap(), AlgebraKind::So),
            (EuclideanSpace::kahler(2).unwrap(), AlgebraKind::U),
            (EuclideanSpace::kahler(3).unwrap(), AlgebraKind::U),
            (EuclideanSpace::quaternionic(2).unwrap(), AlgebraKind::SpSp1),
        ] {
            let g = HolonomySubalgebra::build(&space, kind).unwrap();
            let diag = g.validate();
            assert!(diag.gram_error < 1e-10, "{kind}: {diag:?}");
            assert!(diag.closure_error < 1e-9, "{kind}: {diag:?}");
            assert!(diag.structure_error < 1e-10, "{kind}: {diag:?}");
        }
    }

    #[test]
    fn sp1_part_is_the_normalized_structure_forms() {
        let space = EuclideanSpace::quaternionic(2).unwrap();
        let g = HolonomySubalgebra::build(&space, AlgebraKind::SpSp1).unwrap();
        let ijk = space.quaternionic_structure().unwrap();
        for (q, b) in ijk.iter().zip(&g.basis()[10..]) {
            let w = structure_bivector(q);
            let w = &w / w.norm();
            assert!((w - b.to_vector()).norm() < 1e-12);
        }
    }

    #[test]
    fn structure_bivector_pairs_like_the_metric() {
        // g(IX, Y) = g(X∧Y, ω_I)
        let space = EuclideanSpace::quaternionic(2).unwrap();
        let mut rng = seeded(5);
        for q in space.quaternionic_structure().unwrap() {
            let w = Bivector::from_vector(8, &structure_bivector(q));
            let x = DVector::from_fn(8, |_, _| normal(&mut rng));
            let y = DVector::from_fn(8, |_, _| normal(&mut rng));
            let lhs = (q * &x).dot(&y);
            let rhs = Bivector::wedge(&x, &y).unwrap().inner(&w).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn u_projector_plus_complement_is_identity() {
        let g = HolonomySubalgebra::build(&EuclideanSpace::kahler(3).unwrap(), AlgebraKind::U).unwrap();
        let c = g.complement_basis();
        assert_eq!(c.ncols(), 15 - 9);
        let total = g.projector() + &c * c.transpose();
        assert!((total - DMatrix::<f64>::identity(15, 15)).abs().max() < 1e-12);
    }

    #[test]
    fn projection_examples() {
        let g = HolonomySubalgebra::build(&EuclideanSpace::kahler(2).unwrap(), AlgebraKind::U).unwrap();
        let inside = g.basis()[2].scaled(3.0);
        let p = g.project_bivector(&inside).unwrap();
        assert!((p.to_vector() - inside.to_vector()).norm() < 1e-12);

        let comp = g.complement_basis();
        let outside = Bivector::from_vector(4, &comp.column(0).into_owned());
        assert!(g.project_bivector(&outside).unwrap().norm() < 1e-12);

        let e12 = Bivector::basis(4, 0, 1);
        let pe = g.project_bivector(&e12).unwrap();
        assert!(pe.norm() > 0.1 && pe.norm() <= 1.0 + 1e-12);
        // idempotent
        let pp = g.project_bivector(&pe).unwrap();
        assert!((pp.to_vector() - pe.to_vector()).norm() < 1e-12);
    }

    #[test]
    fn single_generator_u1() {
        let g = HolonomySubalgebra::build(&EuclideanSpace::kahler(1).unwrap(), AlgebraKind::U).unwrap();
        assert_eq!(g.dim(), 1);
        let sharp = g.sharp(&ComplexTensor::basis_covector(2, 0)).unwrap();
        assert_eq!(sharp.slices().len(), 1);
        assert!((sharp.norm_sq() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sharp_pairs_like_the_action() {
        let space = EuclideanSpace::kahler(2).unwrap();
        let g = HolonomySubalgebra::build(&space, AlgebraKind::U).unwrap();
        let mut rng = seeded(11);
        for _ in 0..100 {
            let t = ComplexTensor::from_fn(4, 2, |_| complex_normal(&mut rng));
            let l = g.random_unit_element(&mut rng).scaled(2.5);
            let sharp = g.sharp(&t).unwrap();
            let lt = act_on_tensor(&l, &t).unwrap();
            let idx = [
                (normal(&mut rng).abs() * 10.0) as usize % 4,
                (normal(&mut rng).abs() * 10.0) as usize % 4,
            ];
            assert!((sharp.pair_with(&l, &idx) - lt.get(&idx)).norm() < 1e-9);
        }
    }

    #[test]
    fn sharp_norm_is_basis_independent() {
        let space = EuclideanSpace::kahler(3).unwrap();
        let mut spanning = canonical_spanning_set(&space, AlgebraKind::U).unwrap();
        let g1 = HolonomySubalgebra::from_spanning_set(&space, AlgebraKind::U, &spanning).unwrap();
        spanning.reverse();
        let g2 = HolonomySubalgebra::from_spanning_set(&space, AlgebraKind::U, &spanning).unwrap();
        let mut rng = seeded(2);
        let t = ComplexTensor::from_fn(6, 2, |_| complex_normal(&mut rng));
        let a = g1.sharp(&t).unwrap().norm_sq();
        let b = g2.sharp(&t).unwrap().norm_sq();
        assert!((a - b).abs() < 1e-9 * a.max(1.0));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("sp".parse::<AlgebraKind>().unwrap(), AlgebraKind::SpSp1);
        assert!("g2".parse::<AlgebraKind>().is_err());
    }
}
