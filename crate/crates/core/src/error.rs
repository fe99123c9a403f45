use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index out of range: ({n}, {i})")]
    IndexOutOfRange { n: usize, i: usize },

    #[error("dimension must be at least {min}, got {got}")]
    Dimension { min: usize, got: usize },

    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },

    #[error("negative coefficient at index {index}")]
    NegativeCoefficient { index: usize },

    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: usize },

    #[error("all coefficients vanish: the bodies do not span the ambient space")]
    AllZero,

    #[error("support gap at index {index}")]
    SupportGap { index: usize },

    #[error("ultra-logconcavity fails at index {index}")]
    UlcViolation { index: usize },

    #[error("support mismatch: expected dimensions r = {expected_r}, s = {expected_s}, support gives r = {r}, s = {s}")]
    SupportMismatch {
        expected_r: usize,
        expected_s: usize,
        r: usize,
        s: usize,
    },

    #[error("positive value {value} at index {index}; roots must be non-positive")]
    PositiveRoot { index: usize, value: f64 },

    #[error("sign condition fails at elementary symmetric index {index}")]
    SignPattern { index: usize },

    #[error("root set is not conjugate-closed (index {index})")]
    NotConjugateClosed { index: usize },

    #[error("expected {expected} roots, got {got}")]
    RootCount { expected: usize, got: usize },

    #[error("antiderivative constant {c0} exceeds the cap n*a0^2/((n+1)*a1) = {cap}")]
    ConstantAboveCap { c0: String, cap: String },

    #[error("a positive antiderivative constant needs a full-dimensional first body (a_0 > 0)")]
    ConstantNeedsFullDimension,

    #[error("polynomial has degree zero")]
    DegreeZero,

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        best: Vec<Complex64>,
        residuals: Vec<f64>,
    },

    #[error("only trivial roots")]
    OnlyTrivialRoots,

    #[error("alpha sequence increases at index {index} ({prev} < {next})")]
    NonMonotoneAlpha { index: usize, prev: f64, next: f64 },

    #[error("stage `{stage}` failed: {message}")]
    Stage { stage: &'static str, message: String },

    #[error("no exact description in scope for n = {n}")]
    NoExactCone { n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("truncated binomial index root failure at (j, k) = ({j}, {k}): {message}")]
    ScanRoot { j: usize, k: usize, message: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// The root finder failed to converge, directly or inside a wrapped stage.
    pub fn is_non_convergence(&self) -> bool {
        match self {
            Error::NoConvergence { .. } => true,
            Error::Stage { message, .. } | Error::ScanRoot { message, .. } => {
                message.starts_with("root finder did not converge")
            }
            _ => false,
        }
    }
}
