use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex {0} carries a loop and has no simple reflection")]
    LoopedVertex(usize),
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("expected a graph of type {expected}, found {found}")]
    WrongGraphType { expected: String, found: String },
    #[error("degree {0} is outside 0..=2")]
    BadDegree(usize),
    #[error("flow assignment is missing the wall {gen} of alcove {alcove:?}")]
    IncompleteAssignment { alcove: Vec<usize>, gen: usize },
    #[error("path is broken at step {0}")]
    BrokenPath(usize),
    #[error("reduced-word enumeration truncated at {0} words")]
    TruncatedEnumeration(usize),
    #[error("rewrite search exceeded its budget of {budget} states")]
    SearchBudgetExceeded { budget: usize, best_len: usize },
    #[error("point is not inside the Tits cone (Q = {0})")]
    NotInCone(f64),
    #[error("flow is not a real flow: {0}")]
    InvalidFlow(String),
    #[error("projection onto the wall left the cone")]
    ProjectionFailed,
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("zero scale at index {0}")]
    ZeroEigenvalue(usize),
    #[error("diagonalization failed: {0}")]
    DiagonalizationFailed(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
