use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument sits on (or within tolerance of) a pole.
    #[error("pole: {0}")]
    Pole(&'static str),
    /// An argument lies outside the certified domain of the routine.
    #[error("domain error: {0}")]
    Domain(&'static str),
    /// A series exhausted its term budget before its tail bound was met.
    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },
    /// A quadrature exhausted its refinement budget.
    #[error("quadrature did not converge (estimated relative error {estimate:e})")]
    NonConvergence { estimate: f64 },
}

impl Error {
    /// Short machine-readable name, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::Convergence { .. } => "ConvergenceError",
            Error::NonConvergence { .. } => "NonConvergence",
        }
    }

    /// Precondition violations are not numerical failures.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Domain(_))
    }
}
