use thiserror::Error;

/// Errors produced by the library.
///
/// `Internal` is reserved for invariant violations that indicate a bug in
/// this crate (a theorem check that should be unconditionally true failed);
/// everything else reports invalid input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("edge {u}-{v} is not an edge of the tree")]
    InvalidEdge { u: u32, v: u32 },

    #[error("vertex {0} is out of range")]
    InvalidVertex(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tree of order {0} has no edges")]
    NoEdges(u32),

    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("invalid branch move: {0}")]
    InvalidMove(String),

    #[error("invalid balanced pair: {0}")]
    InvalidPair(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("order {0} is outside the supported range 1..={1}")]
    UnsupportedOrder(usize, usize),

    #[error("branch-exchange closure exceeded {0} distinct trees")]
    ClosureOverflow(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
