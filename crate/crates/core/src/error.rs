use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix entries must be 0 or 1")]
    NotZeroOne,

    #[error("matrix has an identically zero row or column")]
    ZeroRowOrColumn,

    #[error("matrix has a zero row (sinks are not supported)")]
    ZeroRow,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid textile system: {0}")]
    InvalidTextile(String),

    #[error("invalid rank-two data: {0}")]
    InvalidRankTwo(String),

    #[error("invalid cellular automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid pattern shift: {0}")]
    InvalidPattern(String),

    #[error("path is not composable: {0}")]
    NonComposablePath(String),

    #[error("{what} exceeds the budget of {limit}")]
    BudgetExceeded { what: String, limit: usize },

    #[error("no admissible {width}x{height} blocks")]
    EmptyBlockSet { width: usize, height: usize },

    #[error("isomorphism search size {size} exceeds bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },

    #[error("deletion rule disagreement at level {level}, Kronecker index {index}")]
    DeletionRuleMismatch { level: usize, index: usize },

    #[error("arithmetic overflow")]
    Overflow,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {message}")]
    Reference { line: usize, message: String },

    #[error("line {line}: {inner}")]
    Validation { line: usize, inner: Box<Error> },

    #[error("Smith decomposition check failed: {0}")]
    SmithCheck(String),
}

impl Error {
    /// Malformed input text, as opposed to well-formed input that fails a domain check.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Reference { .. })
    }
}
