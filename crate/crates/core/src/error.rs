use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the evaluators.
///
/// Non-convergence of a series or quadrature is not an error: it is reported
/// through [`crate::SeriesResult::converged`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("degenerate difference in Aitken extrapolation")]
    DegenerateDifference,
    #[error("no admissible method for F(z = {z}, x = {x})")]
    NoAdmissibleMethod { z: String, x: String },
}

impl Error {
    /// True for errors that mean "outside the function's domain" (poles included).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole(_) | Error::Domain(_) | Error::Range(_) | Error::NoAdmissibleMethod { .. }
        )
    }
}
