use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{check_dim, Error, Result};

/// Dense complex-valued `(0,k)`-tensor on `ℝ^d`, components stored row-major
/// over `(i₁, …, i_k)` with 0-based indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTensor {
    dim: usize,
    rank: usize,
    data: Vec<Complex64>,
}

impl ComplexTensor {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        Self {
            dim,
            rank,
            data: vec![Complex64::new(0.0, 0.0); dim.pow(rank as u32)],
        }
    }

    pub fn from_components(dim: usize, rank: usize, data: Vec<Complex64>) -> Result<Self> {
        let expected = dim.pow(rank as u32);
        if data.len() != expected {
            return Err(Error::Format(format!(
                "expected {expected} components for dim {dim}, rank {rank}, found {}",
                data.len()
            )));
        }
        Ok(Self { dim, rank, data })
    }

    pub fn from_real(dim: usize, rank: usize, data: &[f64]) -> Result<Self> {
        Self::from_components(
            dim,
            rank,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> Complex64) -> Self {
        let mut t = Self::zeros(dim, rank);
        let mut idx = vec![0usize; rank];
        for flat in 0..t.data.len() {
            t.unflatten_into(flat, &mut idx);
            t.data[flat] = f(&idx);
        }
        t
    }

    pub fn scalar(value: Complex64) -> Self {
        Self {
            dim: 0,
            rank: 0,
            data: vec![value],
        }
    }

    /// Covector with the given components.
    pub fn covector(components: &[Complex64]) -> Self {
        Self {
            dim: components.len(),
            rank: 1,
            data: components.to_vec(),
        }
    }

    /// Dual covector `e^i` of the basis vector `e_i`.
    pub fn basis_covector(dim: usize, i: usize) -> Self {
        let mut t = Self::zeros(dim, 1);
        t.data[i] = Complex64::new(1.0, 0.0);
        t
    }

    /// Real rank-2 tensor from a matrix (`T(e_i, e_j) = m[(i, j)]`).
    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        let d = m.nrows();
        Self::from_fn(d, 2, |ix| Complex64::new(m[(ix[0], ix[1])], 0.0))
    }

    /// Real part of a rank-2 tensor as a matrix.
    pub fn to_real_matrix(&self) -> Result<DMatrix<f64>> {
        if self.rank != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: self.rank,
            });
        }
        let d = self.dim;
        Ok(DMatrix::from_fn(d, d, |i, j| self.data[i * d + j].re))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Stride of slot `s` in the flattened layout.
    pub fn stride(&self, slot: usize) -> usize {
        self.dim.pow((self.rank - 1 - slot) as u32)
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn unflatten_into(&self, mut flat: usize, out: &mut [usize]) {
        for slot in (0..self.rank).rev() {
            out[slot] = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.data[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Complex64) {
        let f = self.flat_index(idx);
        self.data[f] = value;
    }

    /// `Σ T·conj(S)` over all multi-indices.
    pub fn hermitian_inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Full-tensor squared norm `Σ |T_I|²`.
    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Norm of an alternating tensor in the orthonormal wedge-basis convention,
    /// i.e. the full-tensor norm divided by `√(k!)`.
    pub fn form_norm_sq(&self) -> f64 {
        let fact: f64 = (1..=self.rank).map(|x| x as f64).product();
        self.norm_sq() / fact
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).norm())))
    }

    /// Largest imaginary part in absolute value.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, z| acc.max(z.im.abs()))
    }

    pub fn conj(&self) -> Self {
        Self {
            data: self.data.iter().map(|z| z.conj()).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * c).collect(),
            ..self.clone()
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * c).collect(),
            ..self.clone()
        }
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: Complex64, other: &Self) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
        Ok(())
    }

    /// Tensor product `(S ⊗ T)(X, Y) = S(X) T(Y)`.
    pub fn outer(&self, other: &Self) -> Result<Self> {
        if self.rank > 0 && other.rank > 0 {
            check_dim(self.dim, other.dim)?;
        }
        let dim = if self.rank == 0 { other.dim } else { self.dim };
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Ok(Self {
            dim,
            rank: self.rank + other.rank,
            data,
        })
    }

    /// Slot reordering: `out[i₀, …, i_{k-1}] = self[j]` where `j[perm[s]] = i_s`.
    pub fn permute_slots(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut out = Self::zeros(self.dim, self.rank);
        let mut idx = vec![0usize; self.rank];
        let mut src = vec![0usize; self.rank];
        for flat in 0..self.data.len() {
            self.unflatten_into(flat, &mut idx);
            for (s, &p) in perm.iter().enumerate() {
                src[p] = idx[s];
            }
            out.data[flat] = self.get(&src);
        }
        out
    }

    /// Applies the linear map `A` to one slot: `out(…, X, …) = T(…, A X, …)`.
    pub fn pull_back_slot(&self, slot: usize, a: &DMatrix<Complex64>) -> Self {
        let d = self.dim;
        let stride = self.stride(slot);
        let mut out = Self::zeros(d, self.rank);
        for flat in 0..self.data.len() {
            let digit = (flat / stride) % d;
            let base = flat - digit * stride;
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..d {
                let c = a[(m, digit)];
                if c != Complex64::new(0.0, 0.0) {
                    acc += c * self.data[base + m * stride];
                }
            }
            out.data[flat] = acc;
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        if self.rank == 0 {
            return Ok(());
        }
        check_dim(self.dim, other.dim)
    }
}

impl Add for &ComplexTensor {
    type Output = ComplexTensor;

    fn add(self, rhs: &ComplexTensor) -> ComplexTensor {
        self.check_same_shape(rhs).expect("shape mismatch");
        ComplexTensor {
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }
}

impl Sub for &ComplexTensor {
    type Output = ComplexTensor;

    fn sub(self, rhs: &ComplexTensor) -> ComplexTensor {
        self.check_same_shape(rhs).expect("shape mismatch");
        ComplexTensor {
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
            ..self.clone()
        }
    }
}

impl Neg for &ComplexTensor {
    type Output = ComplexTensor;

    fn neg(self) -> ComplexTensor {
        self.scale_real(-1.0)
    }
}

impl Mul<f64> for &ComplexTensor {
    type Output = ComplexTensor;

    fn mul(self, rhs: f64) -> ComplexTensor {
        self.scale_real(rhs)
    }
}

impl Mul<Complex64> for &ComplexTensor {
    type Output = ComplexTensor;

    fn mul(self, rhs: Complex64) -> ComplexTensor {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn component_count() {
        assert_eq!(ComplexTensor::zeros(4, 3).len(), 64);
        assert_eq!(ComplexTensor::zeros(4, 0).len(), 1);
    }

    #[test]
    fn flat_index_row_major() {
        let t = ComplexTensor::zeros(3, 3);
        assert_eq!(t.flat_index(&[1, 2, 0]), 9 + 6);
        let mut idx = [0; 3];
        t.unflatten_into(15, &mut idx);
        assert_eq!(idx, [1, 2, 0]);
    }

    #[test]
    fn inner_of_dual_basis() {
        let e1 = ComplexTensor::basis_covector(4, 0);
        let e2 = ComplexTensor::basis_covector(4, 1);
        assert_eq!(e1.hermitian_inner(&e1).unwrap(), c(1.0, 0.0));
        assert_eq!(e1.hermitian_inner(&e2).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_is_conjugate_symmetric() {
        let t = ComplexTensor::covector(&[c(1.0, 2.0), c(0.5, -1.0)]);
        let s = ComplexTensor::covector(&[c(-0.3, 0.7), c(2.0, 0.1)]);
        let a = t.hermitian_inner(&s).unwrap();
        let b = s.hermitian_inner(&t).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
    }

    #[test]
    fn rank_mismatch_rejected() {
        let a = ComplexTensor::zeros(2, 1);
        let b = ComplexTensor::zeros(2, 2);
        assert!(matches!(
            a.hermitian_inner(&b),
            Err(Error::RankMismatch { .. })
        ));
        let e = ComplexTensor::zeros(4, 1);
        assert!(matches!(
            a.hermitian_inner(&e),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn permute_swaps_slots() {
        let t = ComplexTensor::from_fn(3, 2, |ix| c((ix[0] * 10 + ix[1]) as f64, 0.0));
        let s = t.permute_slots(&[1, 0]);
        assert_eq!(s.get(&[2, 1]), c(12.0, 0.0));
    }

    #[test]
    fn wrong_component_count_is_format_error() {
        assert!(ComplexTensor::from_real(2, 2, &[1.0, 2.0]).is_err());
    }
}
