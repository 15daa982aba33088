//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Unparseable or rejected input row; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// An argument violates its documented bounds (ratio, beta, c, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {node} out of range for graph with {count} nodes")]
    NodeOutOfRange { node: u32, count: usize },

    #[error("unknown node label '{0}'")]
    UnknownLabel(String),

    /// Input data has the wrong shape for the requested operation
    /// (e.g. reciprocity of an undirected graph, single-class AUC input).
    #[error("{0}")]
    InvalidInput(String),

    #[error("test split contains a single class; retry with a different seed")]
    SingleClassTestSet,

    #[error("task not applicable: {0}")]
    TaskNotApplicable(String),

    #[error("solver error: {0}")]
    Solver(String),
}
