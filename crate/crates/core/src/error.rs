use thiserror::Error;

/// Errors raised by the tensor, holonomy, curvature, forms and criteria routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("space carries no complex structure")]
    MissingComplexStructure,

    #[error("space carries no quaternionic structure")]
    MissingQuaternionicStructure,

    #[error("curvature symmetry violated: {what} (residual {residual:.3e})")]
    SymmetryViolation { what: &'static str, residual: f64 },

    #[error("holonomy hypothesis violated: operator leaks {leakage:.3e} off the subalgebra")]
    Leakage { leakage: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vacuous stratum: p + q - 2k = 0")]
    VacuousStratum,

    #[error("malformed spectrum: {0}")]
    MalformedSpectrum(String),

    #[error("malformed input file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
