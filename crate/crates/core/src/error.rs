use num_complex::Complex64;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("gamma pole at {0}")]
    Pole(Complex64),
    #[error("double sine pole at {0}")]
    S2Pole(Complex64),
    #[error("double sine zero at {0}")]
    S2Zero(Complex64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("quadrature tolerance not met at nesting level {level}: error {abs_err:e} > target {target:e}")]
    DepthExceeded { level: usize, abs_err: f64, target: f64 },
    #[error("integrand returned a non-finite value at nesting level {level}, abscissa {at}")]
    NonFinite { level: usize, at: f64 },
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("finite-difference step too large: {0}")]
    StepTooLarge(String),
}

impl Error {
    /// CLI exit code: 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Pole(_)
            | Error::S2Pole(_)
            | Error::S2Zero(_)
            | Error::Domain(_)
            | Error::DegenerateInput(_) => 2,
            Error::DepthExceeded { .. }
            | Error::NonFinite { .. }
            | Error::NonConvergence(_)
            | Error::Divergence(_)
            | Error::StepTooLarge(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
