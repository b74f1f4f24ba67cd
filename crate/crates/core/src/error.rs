use thiserror::Error;

/// Errors raised across the library.
///
/// Vertex and label indices carried by variants are 0-based, like the rest
/// of the API; `Display` renders them 1-based to match the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {} has no pre-colored vertex", .0 + 1)]
    EmptyLabelClass(usize),
    #[error("bad edge ({}, {}): {reason}", .u + 1, .v + 1)]
    BadEdge { u: usize, v: usize, reason: &'static str },
    #[error("vertex {} has negative weight", .0 + 1)]
    NegativeWeight(usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("coloring violates pre-color of vertex {}", .0 + 1)]
    PrecolorViolation(usize),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("fractional labeling invariant violated: {0}")]
    InvariantViolation(String),
    #[error("set function must vanish on the empty set")]
    NonZeroAtEmpty,
    #[error("LP solver failure: {0}")]
    SolverFailure(String),
    #[error("theta {0} outside (1/2, 1]")]
    ThetaOutOfRange(String),
    #[error("enumeration budget exceeded: {uncolored} free vertices with {labels} labels")]
    BudgetExceeded { uncolored: usize, labels: usize },
    #[error("hyperedge enumeration budget exceeded: {hyperedges} hyperedges (budget {budget})")]
    HyperedgeBudgetExceeded { hyperedges: usize, budget: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
