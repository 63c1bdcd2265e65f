use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },

    #[error("lower parameter {value} is zero or a negative integer")]
    InvalidLowerParameter { value: f64 },

    #[error("adaptive quadrature could not reach tolerance {tol:e} (estimate {estimate:e}, {intervals} intervals)")]
    QuadratureFailure {
        tol: f64,
        estimate: f64,
        intervals: usize,
    },

    #[error("point with norm {norm} is not inside the unit ball")]
    PointOnBoundary { norm: f64 },

    #[error("point with norm {norm} exceeds the Monte Carlo guard radius {guard}")]
    TooCloseToBoundary { norm: f64, guard: f64 },

    #[error("{got} samples requested, at least {min} required")]
    InsufficientSamples { got: usize, min: usize },

    #[error("estimated u(0) has norm {norm:e}, above the error budget {budget:e}")]
    CenterNotZero { norm: f64, budget: f64 },

    #[error("no closed form available for dimension {0}")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
