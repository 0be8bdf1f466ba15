use thiserror::Error;

#[derive(Debug, Error)]
pub enum AzumayaError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid star-homomorphism: {reason} (residual {residual:.3e})")]
    InvalidStarHom { reason: String, residual: f64 },

    #[error("numerically degenerate input: {0}")]
    Degenerate(String),

    #[error("retry limit exhausted: {0}")]
    RetryExhausted(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("not a cocycle: coboundary nonzero on simplex {simplex:?}")]
    NotACocycle { simplex: Vec<usize> },

    #[error("cochain mismatch: {0}")]
    CochainMismatch(String),

    #[error("cocycle verification failed: {0}")]
    VerificationFailed(String),

    #[error("sampling too coarse: {0}")]
    SamplingTooCoarse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
