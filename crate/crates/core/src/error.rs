//! Shared error type for the distillation pipeline.

use std::fmt;

/// Errors raised by the library.
#[derive(Debug)]
pub enum Error {
    /// Tensor dimensions are empty, mismatched, or inconsistent with a model.
    InvalidShape(String),
    /// An argument violates an operation's precondition.
    InvalidArgument(String),
    /// An inverse transform produced an imaginary residue above tolerance,
    /// which signals a non-symmetric filter or a corrupted spectrum.
    SymmetryViolation { max_imag: f64 },
    /// A parameter update was requested on a frozen model.
    FrozenModel(String),
    /// A forward cache was used with a model it does not belong to.
    Usage(String),
    /// A non-finite value appeared mid-computation; carries segment context.
    NumericFailure(String),
    /// A training run diverged or failed its quality gate.
    TrainingFailure(String),
    /// A metric is undefined for the given inputs (e.g. zero reference energy).
    UndefinedMetric(String),
    /// Checkpoint or report I/O failed.
    Io(std::io::Error),
    /// A serialized artifact is malformed.
    Format(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidShape(msg) => write!(f, "invalid shape: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::SymmetryViolation { max_imag } => write!(
                f,
                "spectrum symmetry violation: inverse transform left imaginary residue {max_imag:e}"
            ),
            Error::FrozenModel(msg) => write!(f, "frozen model: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::NumericFailure(msg) => write!(f, "numeric failure: {msg}"),
            Error::TrainingFailure(msg) => write!(f, "training failure: {msg}"),
            Error::UndefinedMetric(msg) => write!(f, "undefined metric: {msg}"),
            Error::Io(err) => write!(f, "io error: {err}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
