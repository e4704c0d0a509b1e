use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {n} exceeds the 64-vertex cap")]
    TooManyVertices { n: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("adjacency is not symmetric between {u} and {v}")]
    Asymmetric { u: usize, v: usize },
}

/// A graph6 decoding failure; `offset` is the byte position in the input line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the printable graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: malformed or truncated length prefix")]
    BadLength { offset: usize },
    #[error("byte {offset}: graph order {n} exceeds the 64-vertex cap")]
    TooLarge { offset: usize, n: usize },
    #[error("expected {expected} data bytes for n = {n}, found {found} (data starts at byte {offset})")]
    WrongLength {
        offset: usize,
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {offset}: padding bits after the last edge bit are not zero")]
    NonzeroPadding { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("precondition violated: omega = {omega} but the class forbids K_{q}")]
    CliqueBound { omega: usize, q: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowError {
    #[error("arrow target has no entries greater than 1")]
    EmptyTarget,
    #[error("arrow target entry 0 is not allowed")]
    ZeroEntry,
    #[error("coloring oracle is capped at {max_n} vertices (got {n})")]
    OracleTooManyVertices { n: usize, max_n: usize },
    #[error("coloring oracle is capped at {max_s} colors (got {s})")]
    OracleTooManyColors { s: usize, max_s: usize },
    #[error("class with target {target} and q = {q} is empty for every n: q must exceed max a_i")]
    InvalidClass { target: String, q: usize },
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("extension parameters must have r >= 1 and s >= 1 (got r = {r}, s = {s})")]
    DegenerateParams { r: usize, s: usize },
    #[error("set {set} is not a maximal K3-free subset of the host graph")]
    NotMaximalK3Free { set: String },
    #[error("input graph #{index}: {reason}")]
    InvalidInput { index: usize, reason: String },
    #[error("post-condition violated on output graph {graph6}: {reason}")]
    PostCondition { graph6: String, reason: String },
    #[error(transparent)]
    Arrow(#[from] ArrowError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
