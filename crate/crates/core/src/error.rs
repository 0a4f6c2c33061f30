use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error at column {column}: {message} (near `{token}`)")]
    Parse {
        column: usize,
        token: String,
        message: String,
    },

    #[error("pole at {0}")]
    Pole(String),

    #[error("{0}")]
    Admissibility(String),

    #[error("capability unavailable: {0}")]
    Capability(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("quadrature failure: {0}")]
    Quadrature(String),

    #[error("fit failure: {0}")]
    Fit(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) | Error::Parse { .. } | Error::Admissibility(_) | Error::Domain(_) => 2,
            Error::Capability(_) => 3,
            Error::Pole(_) | Error::Numeric(_) | Error::Quadrature(_) | Error::Fit(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
