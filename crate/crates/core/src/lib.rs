//! Pointwise algebra behind Bochner-technique vanishing theorems on Kähler
//! and quaternion-Kähler spaces.
//!
//! The crate works on a single Euclidean vector space `ℝ^d` in its standard
//! orthonormal basis: tensors and bivectors ([`tensor`]), holonomy subalgebras
//! `𝔰𝔬(d)`, `𝔲(n)`, `𝔰𝔭(m)⊕𝔰𝔭(1)` and the sharp map ([`holonomy`]),
//! algebraic curvature tensors with their Kähler and quaternionic
//! decompositions ([`curvature`]), `(p,q)`-forms ([`forms`]), the
//! Weitzenböck curvature term ([`weitzenbock`]) and the eigenvalue criteria
//! of the vanishing theorems ([`criteria`]). [`verify`] bundles the numeric
//! identity checks into reproducible reports.

pub mod criteria;
pub mod curvature;
pub mod error;
pub mod forms;
pub mod holonomy;
pub mod linalg;
pub mod rng;
pub mod tensor;
pub mod tolerance;
pub mod verify;
pub mod weitzenbock;

pub use error::{Error, Result};
