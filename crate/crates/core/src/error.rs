use thiserror::Error;

/// Errors raised by the algebra engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different variable spaces, or a variable is not part of the space.
    #[error("workspace error: {0}")]
    Workspace(String),
    /// A constructor argument is out of range.
    #[error("argument error: {0}")]
    Argument(String),
    /// The operation is not defined for this input (wrong dimension, wrong algebra).
    #[error("domain error: {0}")]
    Domain(String),
    /// A coefficient was requested outside the window the data supports.
    #[error("truncation error: {0}")]
    Truncation(String),
    /// A structure failed its invariants while being built.
    #[error("construction error: {0}")]
    Construction(String),
    /// A checker precondition does not hold (e.g. the Borcherds integer is too small).
    #[error("precondition error: {0}")]
    Precondition(String),
    /// Malformed input file.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
