use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for ground set [0, {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("ground set size {n} exceeds the supported maximum of {max}")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("edge {edge} has size {actual}, expected {expected}")]
    WrongEdgeSize {
        edge: String,
        actual: usize,
        expected: usize,
    },

    #[error("duplicate edge {edge}")]
    DuplicateEdge { edge: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("search budget exhausted before a definite answer")]
    BudgetExhausted,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("witness verification failed: {0}")]
    BadWitness(String),
}
