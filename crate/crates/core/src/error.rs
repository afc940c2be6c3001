// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate quadratic: leading coefficient {0} is not positive")]
    DegenerateQuadratic(String),
    #[error("degenerate comparison: {0}")]
    DegenerateComparison(String),
    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),
    #[error("corrupted solver state: {0}")]
    CorruptedState(String),
    #[error("size guard: n = {n} exceeds the limit of {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("configuration error: {0}")]
    Configuration(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
