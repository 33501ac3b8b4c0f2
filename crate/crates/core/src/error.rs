use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not defined for the structure-function family given.
    #[error("unsupported family: {operation} requires {required}, got {got}")]
    UnsupportedFamily {
        operation: &'static str,
        required: &'static str,
        got: String,
    },

    /// A structure function violated one of its construction invariants.
    #[error("invalid structure function: {0}")]
    InvalidStructureFunction(String),

    /// A rational literal could not be parsed.
    #[error("malformed rational {0:?}: expected \"a\" or \"a/b\" with b > 0")]
    Parse(String),

    /// A formula hit a zero denominator at a given level.
    #[error("singular point at n = {n}: {expression} vanishes")]
    SingularPoint { n: u64, expression: &'static str },

    /// A verification window reaches outside the data it was asked to check.
    #[error("coverage error: {0}")]
    Coverage(String),

    /// No relation of the requested shape exists.
    #[error("unsolvable: {0}")]
    Unsolvable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
