use thiserror::Error;

/// Errors reported by grid setup, reconstruction kernels and solver drivers.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("window of length {got} too short, expected {expected}")]
    WindowWidth { expected: usize, got: usize },

    #[error("order parameter k = {k}, shift r = {r} out of range")]
    StencilRange { k: usize, r: i32 },

    #[error("NaN tendency at cell {cell}")]
    NanTendency { cell: usize },

    #[error("linear system singular or ill conditioned (condition estimate {cond:.3e})")]
    Singular { cond: f64 },

    #[error("kernel radicand 1 + eps2*d^2 = {radicand:.3e} nonpositive")]
    NegativeRadicand { radicand: f64 },

    #[error("exact solution unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, SolverError>;
