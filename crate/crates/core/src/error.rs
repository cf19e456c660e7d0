use thiserror::Error;

/// Errors raised by the algebra, series and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not Z2-homogeneous")]
    MixedParity,
    #[error("adjoint series did not terminate within {0} steps")]
    NotNilpotent(usize),
    #[error("m must be a nonzero integer")]
    InvalidM,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("tensor rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("leg {leg} out of range for rank {rank}")]
    LegOutOfRange { leg: usize, rank: usize },
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series has a non-unit leading coefficient")]
    NonUnitLeadingTerm,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("truncation order {order} exceeds the cap {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("empty parameter range: {0}")]
    EmptyRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
