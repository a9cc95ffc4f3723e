use thiserror::Error;

use crate::signature::Violation;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order set: {}", join_violations(.0))]
    Validation(Vec<Violation>),
    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: u64 },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("consistency violation: {0}")]
    Consistency(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, limit: u64) -> Self {
        Error::Resource { what: what.into(), limit }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    /// Short machine-readable tag, used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::Resource { .. } => "resource",
            Error::Usage(_) => "usage",
            Error::Numeric(_) => "numeric",
            Error::Consistency(_) => "consistency",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
