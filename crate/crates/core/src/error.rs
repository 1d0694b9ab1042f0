//! Error type shared by all modules.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq, Serialize)]
#[serde(tag = "error", content = "detail")]
pub enum Error {
    #[error("generator is not homogeneous: {0}")]
    NonHomogeneousGenerator(String),
    #[error("degree window too small: {0}")]
    WindowTooSmall(String),
    #[error("operation only defined for the SO(n,1) family: {0}")]
    WrongFamily(String),
    #[error("hypothesis not satisfied: {0}")]
    BadHypothesis(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("argument out of range: {0}")]
    BadRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
