//! Error type shared by every module.
//!
//! Two failure classes matter to callers (and map onto distinct CLI exit
//! codes): inputs outside an operation's mathematical domain, and requests
//! that would blow through a configured resource cap. Cap errors always name
//! the cap so a user knows which knob to turn.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured resource cap would be exceeded.
    #[error("resource limit: {what} = {requested} exceeds cap {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: String,
        cap: String,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn cap(what: &'static str, requested: impl ToString, cap: impl ToString) -> Self {
        Error::ResourceLimit {
            what,
            requested: requested.to_string(),
            cap: cap.to_string(),
        }
    }

    /// Process exit code for the CLI contract: 2 = domain, 3 = resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::ResourceLimit { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
