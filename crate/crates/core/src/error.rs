use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} has been deleted")]
    DeletedVertex(usize),

    #[error("vertex {0} appears more than once")]
    DuplicateVertex(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hypothesis not satisfied: phi = {phi}, need at least {required}")]
    HypothesisNotSatisfied { phi: usize, required: usize },

    #[error("host graph is not complete")]
    HostNotComplete,

    #[error("peeling certified only {k} triangles, {m} requested")]
    InsufficientPeeling { k: usize, m: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("enumeration over {edges} edges is intractable (about {partitions} colorings)")]
    Intractable { edges: usize, partitions: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
