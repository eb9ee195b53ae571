use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid edge ({0}, {1}): endpoints must be distinct")]
    InvalidEdge(usize, usize),

    #[error("edge ({i}, {j}) out of range for a graph on {n_vertices} vertices")]
    EdgeOutOfRange {
        i: usize,
        j: usize,
        n_vertices: usize,
    },

    #[error("{what}: n = {n} exceeds the limit {max}")]
    Capacity {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("{what}: n = {n} is below the minimum {min}")]
    TooSmall {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not a spanning subgraph of G_h")]
    NotSubgraphOfGh,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
