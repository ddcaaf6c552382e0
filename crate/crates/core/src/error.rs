use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("site {site} out of range for a chain of length {length}")]
    SiteOutOfRange { site: usize, length: usize },

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("singular matrix: {0}")]
    Singular(&'static str),

    #[error("eigen-decomposition did not converge (dimension {0})")]
    EigenNoConvergence(usize),

    #[error("input is not a Hecke braid matrix (residual {0:e})")]
    NotHecke(f64),

    #[error("{what}: expected rank {expected}, found {found}")]
    RankMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("extracted quantum determinant is not diagonal (off-diagonal residual {0:e})")]
    NotDiagonal(f64),

    #[error("compression by the q-antisymmetrizer does not factorize (residual {0:e})")]
    CompressionNotFactorized(f64),

    #[error("no Hermitian Fock realization for these parameters: {0}")]
    NoStarRealization(String),

    #[error("parameter mismatch between realization and R-matrix (residual {0:e})")]
    ParameterMismatch(f64),
}
