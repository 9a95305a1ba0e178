use num_complex::Complex64;
use thiserror::Error;

use crate::fock::Space;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: Space, right: Space },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("margin {margin} leaves an empty interior for cutoffs ({d_a}, {d_b})")]
    MarginTooLarge { margin: usize, d_a: usize, d_b: usize },

    #[error("state out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("every eigenvalue fell below the pseudo-inverse floor")]
    AllEigenvaluesFloored,

    #[error("eigenvalue {eigenvalue} lies within the branch guard (phase {phase:.6})")]
    BranchCut { eigenvalue: Complex64, phase: f64 },

    #[error("eigenvector matrix is ill-conditioned (condition number {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error("singular argument: eigenvalue of modulus {modulus:.3e}")]
    Singular { modulus: f64 },

    #[error("eigen-decomposition did not converge")]
    NoConvergence,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("amplitude quadratic form is non-positive at t = {t}")]
    NonPositiveSigma { t: f64 },

    #[error("phase unwrapping failed at t = {t}: jump {jump:.4} exceeds pi/2")]
    UnwrapFailure { t: f64, jump: f64 },

    #[error("step rejected: halving the step moved the endpoint by {change:.3e}")]
    StepRejected { change: f64 },

    #[error("profile error: {0}")]
    Profile(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
