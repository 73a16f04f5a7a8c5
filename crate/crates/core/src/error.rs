use thiserror::Error;

/// Errors raised by the interlacing, enumeration and matrix routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("spectrum is not regular: values {0} and {1} are closer than the tolerance")]
    NonRegular(f64, f64),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("sequence is not weakly descending at position {0}")]
    NotDescending(usize),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("window [{lo}, {hi}] contains no lattice point")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("lattice violation: {0}")]
    LatticeViolation(String),

    #[error("cannot project: group of rank {0} is too small")]
    RankTooSmall(usize),

    #[error("form violation: {0}")]
    FormViolation(String),

    #[error("eigensolver failed to converge")]
    EigensolverFailure,

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
