use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate frame: residual norm {residual:.3e} below tolerance {tolerance:.1e}")]
    DegenerateFrame { residual: f64, tolerance: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("model is not normalizable: {0}")]
    NotNormalizable(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("unsupported backend: {0}")]
    UnsupportedBackend(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("ill-conditioned Gram matrix (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
