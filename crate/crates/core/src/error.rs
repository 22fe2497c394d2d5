use thiserror::Error;

use crate::ids::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("cannot blow down {vertex}: {reason}")]
    BlowdownPrecondition { vertex: VertexId, reason: String },
    #[error("elementary transformation at {vertex} not allowed: {reason}")]
    ElementaryPrecondition { vertex: VertexId, reason: String },
    #[error("invalid relabeling: {0}")]
    BadRelabel(String),
    #[error("vertex order is not a permutation of the vertex set")]
    BadOrder,
    #[error("sequence start key does not match the graph")]
    KeyMismatch,
    #[error("step {index} failed: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("fingerprint mismatch after step {0}")]
    FingerprintMismatch(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not minimal")]
    NotMinimal,
    #[error("graph failed validation: {0}")]
    Invalid(String),
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("contraction sources differ")]
    SourceMismatch,
    #[error("sequence is not a contraction (contains a blowup)")]
    NotContraction,
    #[error("chain does not compose at link {0}")]
    NonComposable(usize),
    #[error("invalid blowup site: {0}")]
    BadSite(String),
    #[error("input is not a single segment: {0}")]
    NotSegment(String),
    #[error("input is not a circular all-rational graph")]
    NotCircular,
    #[error("diagram precondition failed: {0}")]
    Diagram(String),
    #[error("reduction did not converge: {0}")]
    Stalled(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
