// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::puzzle::IllegalMove;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HanoiError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("illegal move: {0}")]
    IllegalMove(#[from] IllegalMove),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {what} needs {required} bytes but the budget is {available} bytes")]
    ResourceLimit {
        what: String,
        required: u128,
        available: u64,
    },
}

pub type Result<T> = std::result::Result<T, HanoiError>;
