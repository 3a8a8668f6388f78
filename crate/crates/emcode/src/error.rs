use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit-count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("operator {0} is not Hermitian")]
    NonHermitian(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid lattice size: {0}")]
    InvalidSize(String),
    #[error("invalid id: {0}")]
    InvalidId(String),
    #[error("forced outcome {forced} contradicts deterministic outcome {determined}")]
    ForcedOutcomeConflict { forced: i8, determined: i8 },
    #[error("not a logical operator: {0}")]
    NotLogical(String),
    #[error("dense limit exceeded: {0} qubits")]
    DenseLimit(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
