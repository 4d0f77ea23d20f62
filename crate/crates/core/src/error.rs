use thiserror::Error;

/// Errors raised while reading a graph description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: duplicate vertex `{name}`")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: unknown vertex `{name}` in edge")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: self-loop on `{name}`")]
    SelfLoop { line: usize, name: String },
    #[error("line {line}: order of `{name}` must be at least 2 or `inf`, got {order}")]
    OrderTooSmall { line: usize, name: String, order: u64 },
    #[error("line {line}: malformed statement `{text}`")]
    Malformed { line: usize, text: String },
}

/// Errors from the group and complex operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word token `{0}`")]
    MalformedWord(String),
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error("resource budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("oracle budget of {0} words exhausted without a decision")]
    OracleBudgetExhausted(usize),
    #[error("vertex {0} is not interior to the ball")]
    NotInterior(usize),
    #[error("sublevel set at {0} is truncated by the ball")]
    SublevelTruncated(String),
    #[error("graph too large for the complex machinery: {0} hat vertices (max 64)")]
    GraphTooLarge(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
