use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::tensor::ComplexTensor;

/// Number of basis bivectors `e_i∧e_j`, `i < j`.
pub fn bivector_dim(d: usize) -> usize {
    d * (d - 1) / 2
}

/// Position of `e_i∧e_j` (`i < j`) in the lexicographic basis of `Λ²ℝ^d`.
pub fn pair_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < d);
    i * (2 * d - i - 1) / 2 + (j - i - 1)
}

/// The ordered basis pairs `(i, j)`, `i < j`.
pub fn pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect()
}

/// Element of `Λ²ℝ^d` in the orthonormal basis `{e_i∧e_j : i < j}`.
///
/// Acts on vectors by `(X∧Y)Z = g(X,Z)Y − g(Y,Z)X`, so the matrix avatar of
/// `e_i∧e_j` sends `e_i ↦ e_j` and `e_j ↦ −e_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bivector {
    dim: usize,
    coeffs: Vec<f64>,
}

impl Bivector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: vec![0.0; bivector_dim(dim)],
        }
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(bivector_dim(dim), coeffs.len())?;
        Ok(Self { dim, coeffs })
    }

    pub fn from_vector(dim: usize, v: &DVector<f64>) -> Self {
        Self {
            dim,
            coeffs: v.iter().copied().collect(),
        }
    }

    /// `e_i∧e_j` for any `i ≠ j` (`e_j∧e_i = −e_i∧e_j`).
    pub fn basis(dim: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i < dim && j < dim);
        let mut b = Self::zero(dim);
        if i < j {
            b.coeffs[pair_index(dim, i, j)] = 1.0;
        } else {
            b.coeffs[pair_index(dim, j, i)] = -1.0;
        }
        b
    }

    /// `X∧Y` for vectors `X, Y`.
    pub fn wedge(x: &DVector<f64>, y: &DVector<f64>) -> Result<Self> {
        check_dim(x.len(), y.len())?;
        let d = x.len();
        let coeffs = pairs(d)
            .into_iter()
            .map(|(i, j)| x[i] * y[j] - x[j] * y[i])
            .collect();
        Ok(Self { dim: d, coeffs })
    }

    /// Bivector whose matrix avatar is the skew part of `m`.
    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        let d = m.nrows();
        let coeffs = pairs(d)
            .into_iter()
            .map(|(i, j)| 0.5 * (m[(j, i)] - m[(i, j)]))
            .collect();
        Self { dim: d, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.coeffs)
    }

    /// Skew matrix `M(L)` with `L v = M(L) v`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for (a, (i, j)) in pairs(d).into_iter().enumerate() {
            let c = self.coeffs[a];
            m[(j, i)] += c;
            m[(i, j)] -= c;
        }
        m
    }

    /// `L v`.
    pub fn apply(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.dim, v.len())?;
        Ok(self.matrix() * v)
    }

    /// Bivector with matrix avatar `M(L₁)M(L₂) − M(L₂)M(L₁)`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let a = self.matrix();
        let b = other.matrix();
        Ok(Self::from_matrix(&(&a * &b - &b * &a)))
    }

    /// Inner product on `Λ²` (`½ tr(M(L₁)ᵀ M(L₂))`).
    pub fn inner(&self, other: &Self) -> Result<f64> {
        check_dim(self.dim, other.dim)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// `(L T)(X₁, …, X_r) = −Σ_i T(X₁, …, L X_i, …, X_r)`.
pub fn act_on_tensor(l: &Bivector, t: &ComplexTensor) -> Result<ComplexTensor> {
    if t.rank() == 0 {
        return Ok(ComplexTensor::zeros(t.dim(), 0));
    }
    check_dim(l.dim(), t.dim())?;
    Ok(act_with_matrix(&l.matrix(), t))
}

/// Same action with the skew matrix supplied directly.
pub fn act_with_matrix(m: &DMatrix<f64>, t: &ComplexTensor) -> ComplexTensor {
    let d = t.dim();
    let mut out = ComplexTensor::zeros(d, t.rank());
    // column lists of nonzeros: M e_a = Σ_b M[b,a] e_b
    let cols: Vec<Vec<(usize, f64)>> = (0..d)
        .map(|a| {
            (0..d)
                .filter(|&b| m[(b, a)] != 0.0)
                .map(|b| (b, m[(b, a)]))
                .collect()
        })
        .collect();
    let src = t.data();
    let dst = out.data_mut();
    for slot in 0..t.rank() {
        let stride = d.pow((t.rank() - 1 - slot) as u32);
        for (flat, value) in dst.iter_mut().enumerate() {
            let digit = (flat / stride) % d;
            let base = flat - digit * stride;
            for &(b, c) in &cols[digit] {
                *value -= src[base + b * stride] * c;
            }
        }
    }
    out
}

/// Action evaluated at a single multi-index.
pub(crate) fn act_at(m: &DMatrix<f64>, t: &ComplexTensor, idx: &[usize]) -> num_complex::Complex64 {
    let d = t.dim();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    let flat = t.flat_index(idx);
    let src = t.data();
    for (slot, &a) in idx.iter().enumerate() {
        let stride = d.pow((t.rank() - 1 - slot) as u32);
        let base = flat - a * stride;
        for b in 0..d {
            let c = m[(b, a)];
            if c != 0.0 {
                acc -= src[base + b * stride] * c;
            }
        }
    }
    acc
}

/// Reads a bivector list file: `[[c₁, c₂, …], …]`.
pub fn bivectors_from_coeff_lists(dim: usize, lists: Vec<Vec<f64>>) -> Result<Vec<Bivector>> {
    lists
        .into_iter()
        .map(|c| Bivector::from_coeffs(dim, c))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Format(format!("bivector list: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn e(d: usize, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(d);
        v[i] = 1.0;
        v
    }

    #[test]
    fn pair_index_matches_pairs() {
        for d in [2, 4, 6, 8] {
            for (a, (i, j)) in pairs(d).into_iter().enumerate() {
                assert_eq!(pair_index(d, i, j), a);
            }
        }
    }

    #[test]
    fn action_on_vectors() {
        let l = Bivector::basis(4, 0, 1);
        assert_eq!(l.apply(&e(4, 0)).unwrap(), e(4, 1));
        assert_eq!(l.apply(&e(4, 2)).unwrap(), DVector::zeros(4));
        let l2 = l.add(&Bivector::basis(4, 2, 3)).unwrap();
        assert_eq!(l2.apply(&e(4, 1)).unwrap(), -e(4, 0));
    }

    #[test]
    fn wedge_of_basis_vectors() {
        let w = Bivector::wedge(&e(4, 2), &e(4, 0)).unwrap();
        assert_eq!(w, Bivector::basis(4, 2, 0));
        assert_eq!(w.coeffs()[pair_index(4, 0, 2)], -1.0);
    }

    #[test]
    fn bracket_examples() {
        let l = Bivector::basis(4, 0, 1);
        assert_eq!(l.bracket(&l).unwrap(), Bivector::zero(4));
        let b = l.bracket(&Bivector::basis(4, 1, 2)).unwrap();
        assert_eq!(b, Bivector::basis(4, 0, 2).scaled(-1.0));
        let c = l.bracket(&Bivector::basis(4, 2, 3)).unwrap();
        assert_eq!(c, Bivector::zero(4));
    }

    #[test]
    fn basis_is_orthonormal() {
        let a = Bivector::basis(6, 1, 4);
        assert_eq!(a.norm(), 1.0);
        // ½ tr(MᵀM) agrees with the coefficient inner product
        let m = a.matrix();
        assert_eq!(0.5 * (m.transpose() * &m).trace(), 1.0);
    }

    #[test]
    fn act_on_dual_basis_covector() {
        // (LT)(X) = −T(LX): (e₁∧e₂)e¹ evaluated at e₂ is −e¹(−e₁) = 1
        let l = Bivector::basis(4, 0, 1);
        let t = ComplexTensor::basis_covector(4, 0);
        let lt = act_on_tensor(&l, &t).unwrap();
        assert_eq!(lt, ComplexTensor::basis_covector(4, 1));
    }

    #[test]
    fn zero_bivector_kills_everything() {
        let t = ComplexTensor::from_fn(4, 2, |ix| Complex64::new(ix[0] as f64, ix[1] as f64));
        let lt = act_on_tensor(&Bivector::zero(4), &t).unwrap();
        assert_eq!(lt.max_abs(), 0.0);
    }

    #[test]
    fn act_at_matches_full_action() {
        let l = Bivector::from_coeffs(4, vec![0.3, -1.0, 0.2, 0.5, 0.0, 2.0]).unwrap();
        let t = ComplexTensor::from_fn(4, 3, |ix| {
            Complex64::new((ix[0] + 2 * ix[1]) as f64, ix[2] as f64 - 1.0)
        });
        let full = act_on_tensor(&l, &t).unwrap();
        let m = l.matrix();
        for idx in [[0, 1, 2], [3, 3, 0], [2, 0, 1]] {
            assert!((act_at(&m, &t, &idx) - full.get(&idx)).norm() < 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let l = Bivector::basis(4, 0, 1);
        assert!(l.apply(&e(6, 0)).is_err());
        assert!(act_on_tensor(&l, &ComplexTensor::zeros(6, 1)).is_err());
        assert!(l.bracket(&Bivector::zero(6)).is_err());
    }
}
