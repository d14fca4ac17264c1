//! JSON tensor exchange format.
//!
//! ```json
//! {"dim": 4, "rank": 2, "j_convention": "block", "components": [[re, im], …]}
//! ```
//!
//! Components are flattened row-major over `(i₁, …, i_k)`: the entry for the
//! (1-based) index tuple `(i₁, …, i_k)` sits at position
//! `Σ_s (i_s − 1)·d^{k−s}`. Optional keys: `kind` (`"curvature"`, `"form"`),
//! `flags` (`"kahler"`, `"quaternion"`), and `p`, `q`, `k` for forms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{ComplexTensor, EuclideanSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JConvention {
    Block,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorFile {
    pub dim: usize,
    pub rank: usize,
    pub j_convention: JConvention,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub components: Vec<[f64; 2]>,
}

pub const FLAG_KAHLER: &str = "kahler";
pub const FLAG_QUATERNION: &str = "quaternion";

impl TensorFile {
    pub fn from_tensor(t: &ComplexTensor, j_convention: JConvention) -> Self {
        Self {
            dim: t.dim(),
            rank: t.rank(),
            j_convention,
            kind: None,
            flags: Vec::new(),
            p: None,
            q: None,
            k: None,
            components: t.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<ComplexTensor> {
        ComplexTensor::from_components(
            self.dim,
            self.rank,
            self.components
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    /// Rebuilds the ambient space from the convention tag and flags.
    pub fn space(&self) -> Result<EuclideanSpace> {
        match self.j_convention {
            JConvention::None => {
                if self.has_flag(FLAG_KAHLER) || self.has_flag(FLAG_QUATERNION) {
                    return Err(Error::Format(
                        "structure flags require j_convention \"block\"".into(),
                    ));
                }
                EuclideanSpace::real(self.dim)
            }
            JConvention::Block => {
                if self.dim % 2 != 0 || self.dim == 0 {
                    return Err(Error::Format(format!(
                        "block convention needs a positive even dimension, got {}",
                        self.dim
                    )));
                }
                if self.has_flag(FLAG_QUATERNION) {
                    if self.dim % 4 != 0 {
                        return Err(Error::Format(format!(
                            "quaternion flag needs dimension divisible by 4, got {}",
                            self.dim
                        )));
                    }
                    EuclideanSpace::quaternionic(self.dim / 4)
                } else {
                    EuclideanSpace::kahler(self.dim / 2)
                }
            }
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json_string()?)?;
        Ok(())
    }
}

pub fn convention_of(space: &EuclideanSpace) -> JConvention {
    if space.is_block_convention() {
        JConvention::Block
    } else {
        JConvention::None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn layout_and_keys() {
        let t = ComplexTensor::basis_covector(2, 1);
        let json = TensorFile::from_tensor(&t, JConvention::None)
            .to_json_string()
            .unwrap();
        assert_eq!(
            json,
            r#"{"dim":2,"rank":1,"j_convention":"none","components":[[0.0,0.0],[1.0,0.0]]}"#
        );
    }

    #[test]
    fn wrong_length_rejected() {
        let f = TensorFile::from_json_str(
            r#"{"dim":2,"rank":2,"j_convention":"none","components":[[1,0]]}"#,
        )
        .unwrap();
        assert!(f.to_tensor().is_err());
    }

    #[test]
    fn flags_pick_the_space() {
        let mut f = TensorFile::from_tensor(&ComplexTensor::zeros(8, 1), JConvention::Block);
        assert!(f.space().unwrap().quaternionic_dim().is_none());
        f.flags.push(FLAG_QUATERNION.into());
        assert_eq!(f.space().unwrap().quaternionic_dim(), Some(2));
        f.j_convention = JConvention::None;
        assert!(f.space().is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(values in proptest::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 18)) {
            let data: Vec<Complex64> = values.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            let t = ComplexTensor::from_components(3, 2, data).unwrap();
            let text = TensorFile::from_tensor(&t, JConvention::None).to_json_string().unwrap();
            let back = TensorFile::from_json_str(&text).unwrap().to_tensor().unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
