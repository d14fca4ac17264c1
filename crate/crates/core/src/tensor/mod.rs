//! Dense complex tensors over an oriented orthonormal Euclidean space,
//! bivectors, and the `𝔰𝔬(V)`-action on tensors.

mod bivector;
mod dense;
pub mod json;
mod space;

pub use bivector::{
    act_on_tensor, act_with_matrix, bivector_dim, bivectors_from_coeff_lists, pair_index, pairs,
    Bivector,
};
pub(crate) use bivector::act_at;
pub use dense::ComplexTensor;
pub use space::{block_complex_structure, block_quaternionic_structure, EuclideanSpace};
