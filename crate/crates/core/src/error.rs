use thiserror::Error;

use crate::graph::{EdgeKey, VertexId};
use crate::patterns::PatternOccurrence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("edge {0} is not in the graph")]
    MissingEdge(EdgeKey),

    #[error("unsupported family `{family}`: {reason}")]
    UnsupportedFamily { family: String, reason: String },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("graph is not diamond-free (witness {witness:?})")]
    NotDiamondFree { witness: Box<PatternOccurrence> },

    #[error("graph is not triangle-free (witness {0:?})")]
    NotTriangleFree([VertexId; 3]),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("oracle refused: {needed} candidate sets exceed the cap of {cap}")]
    OracleCap { needed: u128, cap: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
