use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} cannot be adjacent to itself")]
    SelfLoop(BigUint),
    #[error("vertex {0} is listed as both a neighbour and a non-neighbour")]
    OverlappingSets(BigUint),
    #[error("map has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("expected x < y, got x = {x}, y = {y}")]
    NotIncreasing { x: BigUint, y: BigUint },
    #[error("curves with equal label {0} have no crossing count")]
    EqualLabels(BigUint),
    #[error("graph file line {line}: {msg}")]
    GraphParse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("malformed recipe: {0}")]
    MalformedRecipe(String),
    #[error("a graph with no vertices has no curve system")]
    EmptyGraph,
    #[error("cannot route an a-loop and a b-loop in the same column {0} of one curve")]
    SameColumnPair(BigUint),
    #[error("cannot parse multicurve term {0:?}")]
    MulticurveParse(String),
    #[error("cannot render: {0}")]
    Render(String),
    #[error("exhaustive enumeration is limited to {limit} vertices, got {got}")]
    EnumerationBudget { limit: usize, got: usize },
    #[error("value too large to materialise: {0}")]
    TooLarge(String),
    #[error("sample size {t} exceeds the {n} vertices of the graph")]
    SampleTooLarge { t: usize, n: usize },
    #[error("sweep range must be at least 1")]
    EmptyRange,
}
