use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// A quadrature failed to reach its target tolerance within the
    /// refinement budget. Carries the best estimate and its error bound.
    #[error("quadrature tolerance not reached: best estimate {best}, error bound {bound}")]
    Tolerance { best: f64, bound: f64 },

    /// An eigenvalue iteration exceeded its sweep budget.
    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),

    /// A numerical postcondition failed (trace or determinant conservation,
    /// Hermitian symmetry of an input, ...).
    #[error("numerical check failed: {0}")]
    Numerical(&'static str),

    /// A Monte Carlo estimate could not be formed (e.g. every replica pair
    /// was rejected by the collision rule).
    #[error("estimation failed: {0}")]
    Estimation(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
