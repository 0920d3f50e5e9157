use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge (value {value:e}, error estimate {error:e})")]
    NonConvergence { value: f64, error: f64 },

    #[error("integrand is not finite at {at:e}")]
    NonFiniteIntegrand { at: f64 },

    #[error("integral of the squared log-derivative diverges for this sampling function")]
    DivergentIntegral,

    #[error("root finder failed: {0}")]
    RootNotBracketed(String),

    #[error("no bound is computed for spacetime dimension {0}; only d = 2 is supported")]
    UnsupportedDimension(u32),

    #[error("Fock truncation {dim} too small: tail mass {tail:e} exceeds 1e-10")]
    TruncationTooSmall { dim: usize, tail: f64 },

    #[error("dimension mismatch: operator is {operator}x{operator}, state has {state} components")]
    DimensionMismatch { operator: usize, state: usize },

    #[error(
        "<E^2> shift {e2:e} is below -f^2 = {bound:e}; the quantum inequality \
         <E^2(x0,t)> >= -f^2(x0) forbids this (it would make the decay probability negative)"
    )]
    QiViolation { e2: f64, bound: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
