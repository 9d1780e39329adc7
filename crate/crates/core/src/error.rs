use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("empty link sequence: no network to analyze")]
    Empty,
    #[error("self-loop {0} -> {0} is not allowed in this graph")]
    SelfLoop(u64),
    #[error("node id {id} out of range for {node_count} nodes")]
    NodeOutOfRange { id: u64, node_count: usize },
    #[error("operation requires a directed graph")]
    NotDirected,
    #[error("largest weakly connected component has {0} node(s), need at least 2")]
    ComponentTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NetworkError {
    #[error("record has an empty paper id")]
    EmptyPaperId,
    #[error("duplicate paper id {0:?}")]
    DuplicatePaperId(String),
    #[error("no resolvable citations between records")]
    NoCitations,
    #[error("no record carries authors")]
    NoAuthors,
    #[error("no paper has two or more authors")]
    NoCoauthorship,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("tail has {0} degrees >= k_min, need at least 2")]
    ShortTail(usize),
    #[error("degenerate tail: all tail degrees equal k_min")]
    DegenerateTail,
    #[error("undefined mixing: zero variance")]
    UndefinedMixing,
    #[error("graph too fragmented: hop plot ends at H = {0}")]
    Fragmented(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("need at least {need} databases, got {got}")]
    TooFewDatabases { need: usize, got: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("measure {0:?}: zero leave-one-out deviation")]
    ZeroDeviation(String),
    #[error("measure {0:?}: more than one missing value")]
    TooManyMissing(String),
    #[error("no usable measure columns")]
    NoColumns,
    #[error("measures mutually redundant: {0} survivor(s)")]
    Redundant(usize),
    #[error("|r| = 1: perfectly dependent")]
    PerfectlyDependent,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MdsError {
    #[error("dissimilarity matrix is not square")]
    NotSquare,
    #[error("dissimilarity matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("dissimilarity matrix has a nonzero diagonal or a negative entry at ({0}, {1})")]
    InvalidEntry(usize, usize),
    #[error("rows {0} and {1} share no present columns")]
    NoSharedColumns(usize, usize),
    #[error("measure column {0} has zero variance")]
    ZeroVariance(usize),
    #[error("embedding dimension must be 2 or 3, got {0}")]
    Dimension(usize),
}
