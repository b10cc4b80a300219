use thiserror::Error;

/// Errors raised by the library. Pure predicates never fail; constructors and
/// parsers do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse partition `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("ground sets differ: {left} vs {right}")]
    SupportMismatch { left: String, right: String },

    #[error("partitions live over different universes (n = {left} and n = {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("`{0}` must have exactly two blocks")]
    NotTwoBlock(String),

    #[error("statement `{0}` has fewer than two blocks")]
    TrivialStatement(String),

    #[error("invalid state shape: {0}")]
    Shape(String),

    #[error("index vector {0} is not a column of the parametrization")]
    UnknownColumn(String),

    #[error("parameter `{0}` must be positive")]
    NonPositiveParameter(String),

    #[error("expected {expected} parameter values, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("universe size {n} outside the supported range {range}")]
    SizeOutOfRange { n: usize, range: String },

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
