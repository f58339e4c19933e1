//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("expansion needs larger truncation: increase S_max to at least {needed}")]
    Truncation { needed: String },
    #[error("table entry unavailable: {0}")]
    Unavailable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
