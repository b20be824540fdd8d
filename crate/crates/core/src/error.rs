use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("input set is empty")]
    EmptyInput,

    #[error("points are not affinely independent")]
    NotIndependent,

    #[error("point does not lie in the affine span of the frame")]
    NotInSpan,

    #[error("frame does not cover the point set")]
    NotCovering,

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
