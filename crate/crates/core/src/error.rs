use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("clutter has an empty edge")]
    EmptyEdge,
    #[error("deletion and contraction sets overlap")]
    OverlappingSpec,
    #[error("universe of {n} vertices exceeds the limit of {limit}")]
    UniverseTooLarge { n: usize, limit: usize },
    #[error("weight box of {count} vectors exceeds the budget of {budget}")]
    BoundTooLarge { count: u128, budget: u128 },
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("vertex index {index} out of range for a universe of {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("edge {0} is contained in edge {1}")]
    InclusionViolation(String, String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("F edge {0} is comparable with an edge of the base clutter")]
    InclusionConflict(String),
    #[error("unsupported F specification: {0}")]
    UnsupportedFSpec(String),
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("clutter is not two-partitionable under the given blocks: {0}")]
    NotTwoPartitionable(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("no selection rule applies at iteration {iteration}: {reason}")]
    NoRuleApplies { iteration: usize, reason: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
