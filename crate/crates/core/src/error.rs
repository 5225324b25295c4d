use std::path::PathBuf;

use thiserror::Error;

use crate::graph::{NodeId, SequenceViolation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("self-loop on node {node}{}", at_line(*line))]
    SelfLoop { node: NodeId, line: Option<usize> },

    #[error("duplicate edge ({u}, {v}){}", at_line(*line))]
    DuplicateEdge {
        u: NodeId,
        v: NodeId,
        line: Option<usize>,
    },

    #[error("node {0} has no incident edge")]
    IsolatedNode(NodeId),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("illegal incremental sequence: {0}")]
    IllegalSequence(#[from] SequenceViolation),

    #[error("partition does not cover the graph: {0}")]
    PartitionMismatch(String),

    #[error("encoding tree does not match graph: {0}")]
    TreeMismatch(String),

    #[error("edge ({u}, {v}) has no endpoint with a community assignment")]
    UnassignedEdge { u: NodeId, v: NodeId },

    #[error("expected a {expected}-dimensional encoding tree, got height {actual}")]
    WrongHeight { expected: u8, actual: u8 },

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn at_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" at line {l}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
