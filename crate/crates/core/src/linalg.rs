//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::tolerance::DEPENDENCE_TOL;

/// Modified Gram–Schmidt (two passes) over `vectors` in the given order.
///
/// Vectors whose residual norm falls below `DEPENDENCE_TOL` are dropped, so the
/// output order is the order of first appearance of each new direction.
pub fn gram_schmidt(vectors: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        let norm = w.norm();
        if norm > DEPENDENCE_TOL {
            basis.push(w / norm);
        }
    }
    basis
}

/// Eigen-decomposition of a symmetric matrix with eigenvalues ascending.
///
/// Ties keep the order in which nalgebra returned them.
pub fn sorted_symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Orthonormal basis of the null space of `a` (columns are coordinates).
///
/// Computed from the eigenvectors of `aᵀa` with eigenvalue below
/// `rel_tol · max(1, λ_max)`.
pub fn null_space(a: &DMatrix<f64>, rel_tol: f64) -> Vec<DVector<f64>> {
    let gram = a.transpose() * a;
    let (values, vectors) = sorted_symmetric_eigen(&gram);
    let top = values.last().copied().unwrap_or(0.0).max(1.0);
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < rel_tol * top)
        .map(|(i, _)| vectors.column(i).into_owned())
        .collect()
}

/// `Q diag(μ) Qᵀ`.
pub fn orthogonal_eigenbasis_rotation(q: &DMatrix<f64>, mu: &[f64]) -> DMatrix<f64> {
    let d = DMatrix::from_diagonal(&DVector::from_column_slice(mu));
    q * d * q.transpose()
}

/// Largest singular value.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_schmidt_drops_dependent() {
        let v = vec![
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![2.0, 0.0, 0.0]),
            DVector::from_vec(vec![1.0, 1.0, 0.0]),
        ];
        let b = gram_schmidt(&v);
        assert_eq!(b.len(), 2);
        assert!((b[1][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 1.0, 0.0, 2.0, 2.0, 0.0]);
        let ns = null_space(&a, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&a * v).norm() < 1e-12);
        }
    }

    #[test]
    fn eigen_sorted() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, -1.0, 2.0]));
        let (vals, _) = sorted_symmetric_eigen(&m);
        assert_eq!(vals, vec![-1.0, 2.0, 3.0]);
    }
}
