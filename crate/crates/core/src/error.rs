use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),

    #[error("zero vector has no coroot")]
    ZeroRoot,

    #[error("vector {0} is not in the coroot lattice")]
    NotInLattice(String),

    #[error("positive root index {index} out of range (system has {count})")]
    RootIndex { index: usize, count: usize },

    #[error("linear part does not permute the root system")]
    NotInWeylGroup,

    #[error("element has a nonzero translation part")]
    NotSpherical,

    #[error("invalid positions: {0}")]
    InvalidPositions(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("element is not in the enumerated group")]
    NotInTable,

    #[error("uncertified length for {element} at window {window}")]
    Uncertified { element: String, window: i64 },

    #[error("search envelope exceeded: {0}")]
    Envelope(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
