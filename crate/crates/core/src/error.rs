use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants that come from a numeric check carry the measured violation so
/// callers can report how far off the input was.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: |m - m†|_F = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace} (expected 1)")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("bc + bd + cd = {value} lies outside the window [0, 1/12]")]
    OutsideValidityWindow { value: f64 },

    #[error("coefficients sum to {sum} (expected 1/2)")]
    NormalizationViolated { sum: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
