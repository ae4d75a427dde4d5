use thiserror::Error;

/// Errors raised by kernel evaluation, quadrature and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller supplied an object that lacks something the operation needs
    /// (a missing derivative, a kernel kind the routine does not handle, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The result is not representable as a finite `f64`.
    #[error("range error: {0}")]
    Range(String),

    /// A numerical procedure did not reach its tolerance. The best estimate
    /// available at the point of failure is carried along.
    #[error("accuracy failure: {message} (best estimate {best_estimate:e})")]
    Accuracy { message: String, best_estimate: f64 },

    /// Two routes that must agree did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(msg: impl Into<String>, best_estimate: f64) -> Self {
        Error::Accuracy {
            message: msg.into(),
            best_estimate,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
