use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point set is not symmetric under negation")]
    NotSymmetric,

    #[error("degenerate ball: {0}")]
    DegenerateBall(String),

    #[error("dimension {0} exceeds the supported cap of {1}")]
    DimensionCap(usize, usize),

    #[error("zero vector not allowed for {0}")]
    ZeroVector(&'static str),

    #[error("face does not belong to the stated polytope")]
    ForeignFace,

    #[error("instance too large: {got} terminals, exact mode supports at most {limit}")]
    SizeLimit { got: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
