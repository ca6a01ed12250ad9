use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input {0:?} is outside the declared domain")]
    Domain(String),

    #[error("invalid target specification: {0}")]
    InvalidSpec(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("invalid deck: {0}")]
    InvalidDeck(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("machine model violation: {0}")]
    ModelViolation(String),

    #[error("encoding error: {0}")]
    Encoding(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("search budget of {limit} evaluations exceeded")]
    Budget { limit: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
