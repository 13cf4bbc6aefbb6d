use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operation requires the {expected} coupling, got {found}")]
    VariantMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("spectral sum not converged after {n_max} blocks (last block / running sum = {ratio:e})")]
    TruncationFailure { n_max: usize, ratio: f64 },

    #[error("truncated Euler-Maclaurin partition function is non-positive ({value:e}) at beta = {beta}")]
    NonPositiveResult { value: f64, beta: f64 },
}
