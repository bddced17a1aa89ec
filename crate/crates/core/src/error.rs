use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The variants map one-to-one onto the exit codes of the command-line front
/// end (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("quadrature did not converge after {nodes} nodes (estimated error {est_error:e})")]
    Quadrature { nodes: usize, est_error: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn geometry(msg: impl Into<String>) -> Self {
        Error::Geometry(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Process exit code used by the CLI for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::Invalid(_) => 2,
            Error::Geometry(_) => 3,
            Error::Quadrature { .. } => 4,
            Error::Domain(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
