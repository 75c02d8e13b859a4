use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value matrix is not symmetric at ({row}, {col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("value at ({row}, {col}) is outside [0, 1]")]
    OutOfRange { row: usize, col: usize },

    #[error("bad block measure at index {index}: {reason}")]
    BadMeasure { index: usize, reason: String },

    #[error("value matrix has shape mismatch: expected {expected}x{expected}")]
    Shape { expected: usize },

    #[error("restriction to an empty block set")]
    EmptyRestriction,

    #[error("block index {index} out of range for {blocks} blocks")]
    BlockIndex { index: usize, blocks: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{what} exceeds the supported size ({size} > {limit})")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("too many blocks in the common refinement ({blocks} > {limit})")]
    TooManyBlocks { blocks: usize, limit: usize },

    #[error("linear program dimension mismatch in constraint {constraint}: {found} coefficients, {expected} variables")]
    DimensionMismatch {
        constraint: usize,
        expected: usize,
        found: usize,
    },

    #[error("simplex exceeded the pivot limit of {0}")]
    PivotLimit(usize),

    #[error("b-fold search exceeded its ceiling of {ceiling} colors")]
    SearchCeiling { ceiling: usize },

    #[error("invalid fractional clique: {0}")]
    InvalidClique(String),

    #[error("invalid fractional coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A computed quantity contradicts a proven inequality. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}
