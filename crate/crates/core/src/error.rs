use thiserror::Error;

/// Errors raised by graph construction and the analyses built on top of it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The input lies outside the domain of the operation (for example a
    /// disconnected graph where connectivity is required).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what}: {required} exceeds budget {budget}")]
    Resource {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    /// A cross-check between two independent routes disagreed.
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Json(_) => 3,
            Error::Resource { .. } => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Parameter(_) => "parameter",
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::Resource { .. } => "resource",
            Error::Inconsistent(_) => "inconsistent",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
