use thiserror::Error;

/// Errors raised by the exact computation pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable space mismatch: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("matrix is not traceless (trace = {0})")]
    NotTraceless(String),

    #[error("element does not lie in {0}")]
    NotInSubalgebra(&'static str),

    #[error("Fourier transform expects a {expected}-side operator")]
    WrongSide { expected: &'static str },

    #[error("a numeric value of lambda is required, got the generic symbol")]
    GenericParameter,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
