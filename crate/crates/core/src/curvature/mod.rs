//! Algebraic curvature tensors, curvature operators and their decompositions.

mod decompose;
mod identities;
mod models;
mod random;
mod spectrum;
mod tensor;

pub use decompose::{
    bochner_traces, kahler_decompose, quaternion_decompose, KahlerDecomposition,
    KahlerDecompositionFile, QuaternionDecomposition, QuaternionDecompositionFile,
};
pub use identities::{
    casimir_quaternion_coefficient, kahler_sharp_identity, printed_quaternion_coefficient,
    quaternion_sharp_identity, KahlerSharpReport, QuaternionSharpReport, IDENTITY_TOL,
};
pub use models::{hpm_operator, kahler_base, kulkarni_nomizu, metric_tensor, model, ModelKind};
pub use random::{
    random_curvature, random_einstein_kahler, random_hyperkahler, random_kahler,
    random_quaternion_kahler, Sym2BSampler,
};
pub use spectrum::{complement_block_norm, gram_block, restricted_spectrum, RestrictedSpectrum};
pub use tensor::{
    adjoint_matrix, induced_on_bivectors, symmetry_residuals, AlgebraicCurvatureTensor,
    CurvatureOperator, SymmetryResiduals, KIND_CURVATURE,
};
