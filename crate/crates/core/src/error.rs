use crate::graph::Edge;

/// Unified error type for the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: expected two whitespace-separated tokens, found {found}")]
    MalformedLine { line: usize, found: usize },

    #[error("edge list contains no usable edges")]
    EmptyGraph,

    #[error("node id {0} out of range (graph has {1} nodes)")]
    NodeOutOfRange(usize, usize),

    #[error("unknown node label {0:?}")]
    UnknownLabel(String),

    #[error("edge ({0}, {1}) does not exist in the base graph")]
    UnknownEdge(usize, usize),

    #[error("edge ({0}, {1}) is already deleted in this view")]
    EdgeAlreadyDeleted(usize, usize),

    #[error("core index covers {0} nodes but the view has {1}")]
    InconsistentIndex(usize, usize),

    #[error("node {0} has core value 0; core strength is undefined")]
    CoreZero(usize),

    #[error("node {0} is not a corona node (core strength != 1)")]
    NotCorona(usize),

    #[error("target {0} has core value 0; nothing to collapse")]
    TargetIsolated(usize),

    #[error("oracle infeasible: {reason}")]
    OracleInfeasible { reason: String },

    #[error("collapse set replay failed: {0:?} is not live at its removal step")]
    InvalidReplay(Edge),

    #[error("per-node time budget of {0:.1}s exceeded")]
    Timeout(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
