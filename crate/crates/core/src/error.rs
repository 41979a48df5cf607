use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by graph ingestion, clustering and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),

    #[error("edge ({u}, {v}) listed with conflicting weights {first} and {second}")]
    ConflictingDuplicate { u: u32, v: u32, first: f64, second: f64 },

    #[error("edge ({u}, {v}) has weight {w}; clustering inputs need positive finite weights")]
    NonPositiveWeight { u: u32, v: u32, w: f64 },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("cluster {0} is dead or unknown")]
    DeadCluster(u32),

    #[error("clusters {0} and {1} are not adjacent")]
    MissingEdge(u32, u32),

    #[error("invalid merge batch: {0}")]
    InvalidBatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("no pair of leaves shares a class")]
    NoSameClassPairs,

    #[error("invalid dendrogram: {0}")]
    InvalidDendrogram(String),

    #[error("invalid point set: {0}")]
    InvalidPoints(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("gadget simulation failed: {0}")]
    Simulation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
