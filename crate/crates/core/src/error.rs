//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration would exceed the configured size bound.
    #[error("size {size} exceeds the configured bound {bound}")]
    SizeBound { size: usize, bound: usize },
    /// Greedy Schur extraction met a negative or unmatched term.
    #[error("aggregate is not Schur positive at signature {signature}")]
    NotSchurPositive { signature: String },
    /// A package isomorphism or rewiring precondition failed.
    #[error("transform obstruction at color {color}: {reason}")]
    Obstruction { color: usize, reason: String },
    /// The transform driver could not reach a dual equivalence graph.
    #[error("transform failed: {reason}")]
    TransformFailed { reason: String, log: Vec<crate::transform::Event> },
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
