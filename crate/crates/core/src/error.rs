use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("denominator not invertible modulo {prime}; pick another prime")]
    NonInvertibleDenominator { prime: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid variety family: {0}")]
    InvalidFamily(&'static str),
    #[error("degenerate parameters: {0}")]
    DegenerateParams(&'static str),
    #[error("no known equation for sigma_{s} of {family}")]
    NoKnownEquation { family: alloc::string::String, s: usize },
    #[error("random sampling failed after {retries} retries")]
    SamplingFailed { retries: usize },
    #[error("secant dimension unknown for sigma_{s} of {family}")]
    UnknownCase { family: alloc::string::String, s: usize },
    #[error("{0} is not a hypersurface")]
    NotAHypersurface(alloc::string::String),
    #[error("all tangent coefficients are zero")]
    AllZero,
    #[error("parameter k = {k} is excluded for decomposition case {case}")]
    ExcludedParameter { case: u8, k: alloc::string::String },
    #[error("coefficients do not satisfy the guard of case {0}")]
    GuardViolated(u8),
    #[error("points are proportional")]
    ProportionalPoints,
    #[error("the line meets the hypersurface only at the variety point")]
    NoSecondaryIntersection,
    #[error("no witness found after {tries} tries ({degenerate} degenerate directions); inconclusive")]
    WitnessNotFound { tries: usize, degenerate: usize },
    #[error("precondition violated: {0}")]
    PrecondViolated(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
