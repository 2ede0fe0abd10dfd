use thiserror::Error;

/// Every failure the library can report.
///
/// `Capability` marks a question the implementation cannot decide for the
/// given input (for example factoring over an 𝔽_p(t) tower); it is never
/// used to hide a wrong answer. `Internal` means two independent routes
/// disagreed and indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("capability limit: {0}")]
    Capability(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("not generated within bound {bound}: {detail}")]
    NotGenerated { bound: usize, detail: String },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability(_))
    }
}
