use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("bilinear form is degenerate")]
    SingularForm,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("induced structure is ill-defined: {0}")]
    IllDefined(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("no double-construction candidate verifies")]
    NoCandidate,
    #[error("center mismatch: center of the sum algebra has dim {sum_dim}, two-operation center has dim {two_op_dim}")]
    CenterMismatch { sum_dim: usize, two_op_dim: usize },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
