use nalgebra::DMatrix;

use crate::error::{Error, Result};

const STRUCTURE_TOL: f64 = 1e-10;

/// Euclidean space `ℝ^d` with its standard orthonormal basis, optionally
/// carrying an orthogonal complex structure `J` or a quaternionic triple
/// `(I, J, K)`.
///
/// The metric is the identity in the stored basis.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanSpace {
    real_dim: usize,
    complex_structure: Option<DMatrix<f64>>,
    quaternionic_structure: Option<[DMatrix<f64>; 3]>,
}

/// Block complex structure: `J e_{2i-1} = e_{2i}`, `J e_{2i} = -e_{2i-1}`.
pub fn block_complex_structure(n: usize) -> DMatrix<f64> {
    let d = 2 * n;
    let mut j = DMatrix::zeros(d, d);
    for b in 0..n {
        j[(2 * b + 1, 2 * b)] = 1.0;
        j[(2 * b, 2 * b + 1)] = -1.0;
    }
    j
}

/// Left multiplication by `i, j, k` on `ℍ^m`, each quaternionic line spanned
/// by `e_{4b+1} ↔ 1`, `e_{4b+2} ↔ i`, `e_{4b+3} ↔ j`, `e_{4b+4} ↔ k`.
///
/// `I` coincides with the block complex structure and `IJ = K`.
pub fn block_quaternionic_structure(m: usize) -> [DMatrix<f64>; 3] {
    let d = 4 * m;
    let mut i = DMatrix::zeros(d, d);
    let mut j = DMatrix::zeros(d, d);
    for b in 0..m {
        let o = 4 * b;
        // i·1 = i, i·i = -1, i·j = k, i·k = -j
        i[(o + 1, o)] = 1.0;
        i[(o, o + 1)] = -1.0;
        i[(o + 3, o + 2)] = 1.0;
        i[(o + 2, o + 3)] = -1.0;
        // j·1 = j, j·i = -k, j·j = -1, j·k = i
        j[(o + 2, o)] = 1.0;
        j[(o + 3, o + 1)] = -1.0;
        j[(o, o + 2)] = -1.0;
        j[(o + 1, o + 3)] = 1.0;
    }
    let k = &i * &j;
    [i, j, k]
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

fn check_complex_structure(j: &DMatrix<f64>, d: usize, name: &str) -> Result<()> {
    if j.nrows() != d || j.ncols() != d {
        return Err(Error::InvalidSpace(format!("{name} must be {d}x{d}")));
    }
    let id = DMatrix::<f64>::identity(d, d);
    let sq = max_abs(&(j * j + &id));
    let orth = max_abs(&(j.transpose() * j - &id));
    if sq > STRUCTURE_TOL || orth > STRUCTURE_TOL {
        return Err(Error::InvalidSpace(format!(
            "{name} is not an orthogonal complex structure (|{name}²+1| = {sq:.2e}, |{name}ᵀ{name}-1| = {orth:.2e})"
        )));
    }
    Ok(())
}

impl EuclideanSpace {
    /// Plain Euclidean space of even dimension `d`.
    pub fn real(real_dim: usize) -> Result<Self> {
        if real_dim == 0 || real_dim % 2 != 0 {
            return Err(Error::InvalidSpace(format!(
                "real dimension must be positive and even, got {real_dim}"
            )));
        }
        Ok(Self {
            real_dim,
            complex_structure: None,
            quaternionic_structure: None,
        })
    }

    /// `ℂ^n` with the block complex structure.
    pub fn kahler(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpace("complex dimension must be positive".into()));
        }
        Ok(Self {
            real_dim: 2 * n,
            complex_structure: Some(block_complex_structure(n)),
            quaternionic_structure: None,
        })
    }

    /// `ℍ^m` with the block quaternionic structure; the complex structure is `I`.
    pub fn quaternionic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpace("quaternionic dimension must be positive".into()));
        }
        let ijk = block_quaternionic_structure(m);
        Ok(Self {
            real_dim: 4 * m,
            complex_structure: Some(ijk[0].clone()),
            quaternionic_structure: Some(ijk),
        })
    }

    /// Space with a user-supplied complex structure, validated.
    pub fn with_complex_structure(j: DMatrix<f64>) -> Result<Self> {
        let d = j.nrows();
        let space = Self::real(d)?;
        check_complex_structure(&j, d, "J")?;
        Ok(Self {
            complex_structure: Some(j),
            ..space
        })
    }

    /// Space with a user-supplied quaternionic triple, validated.
    pub fn with_quaternionic_structure(ijk: [DMatrix<f64>; 3]) -> Result<Self> {
        let d = ijk[0].nrows();
        if d % 4 != 0 {
            return Err(Error::InvalidSpace(format!(
                "quaternionic structure needs dimension divisible by 4, got {d}"
            )));
        }
        let space = Self::real(d)?;
        for (mat, name) in ijk.iter().zip(["I", "J", "K"]) {
            check_complex_structure(mat, d, name)?;
        }
        let [i, j, k] = &ijk;
        let ij_k = max_abs(&(i * j - k));
        let anti = max_abs(&(i * j + j * i));
        if ij_k > STRUCTURE_TOL || anti > STRUCTURE_TOL {
            return Err(Error::InvalidSpace(format!(
                "quaternion relations fail (|IJ-K| = {ij_k:.2e}, |IJ+JI| = {anti:.2e})"
            )));
        }
        Ok(Self {
            complex_structure: Some(ijk[0].clone()),
            quaternionic_structure: Some(ijk),
            ..space
        })
    }

    pub fn dim(&self) -> usize {
        self.real_dim
    }

    /// Complex dimension `n = d/2`.
    pub fn complex_dim(&self) -> usize {
        self.real_dim / 2
    }

    /// Quaternionic dimension `m = d/4`, if a quaternionic structure is present.
    pub fn quaternionic_dim(&self) -> Option<usize> {
        self.quaternionic_structure.as_ref().map(|_| self.real_dim / 4)
    }

    pub fn has_complex_structure(&self) -> bool {
        self.complex_structure.is_some()
    }

    pub fn has_quaternionic_structure(&self) -> bool {
        self.quaternionic_structure.is_some()
    }

    pub fn complex_structure(&self) -> Result<&DMatrix<f64>> {
        self.complex_structure
            .as_ref()
            .ok_or(Error::MissingComplexStructure)
    }

    pub fn quaternionic_structure(&self) -> Result<&[DMatrix<f64>; 3]> {
        self.quaternionic_structure
            .as_ref()
            .ok_or(Error::MissingQuaternionicStructure)
    }

    /// Kähler form `ω(X, Y) = g(JX, Y)` as a matrix, i.e. `ω = Jᵀ`.
    pub fn kahler_form(&self) -> Result<DMatrix<f64>> {
        Ok(self.complex_structure()?.transpose())
    }

    /// Whether the structure matches the block convention (for file export).
    pub fn is_block_convention(&self) -> bool {
        match &self.complex_structure {
            None => false,
            Some(j) => max_abs(&(j - block_complex_structure(self.complex_dim()))) == 0.0,
        }
    }
}
