use thiserror::Error;

/// Errors produced by state, gate, circuit and observable operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("cannot allocate a state of {num_qubits} qubits")]
    Allocation { num_qubits: usize },

    #[error("invalid quantum map: {0}")]
    InvalidMap(String),

    #[error("gate at position {position} cannot be merged")]
    NotMergeable { position: usize },

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
