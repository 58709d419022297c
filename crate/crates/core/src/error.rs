use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: non-monotone grid, zero direction, negative mode index.
    #[error("invalid input: {0}")]
    Input(String),

    /// Too few samples or too low a quadrature order.
    #[error("insufficient resolution: {what} is {got}, need at least {min}")]
    Resolution {
        what: &'static str,
        got: usize,
        min: usize,
    },

    /// A physical parameter outside its admissible range (e.g. 2m >= R).
    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// The potential is not positive where it must be.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure could not produce a trustworthy value.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Horizon launch data would not meet its series error budget.
    #[error("launch rejected: series error estimate {estimate:e} exceeds {budget:e} at offset {offset:e}")]
    Launch {
        offset: f64,
        estimate: f64,
        budget: f64,
    },

    /// Radial integration terminated before reaching the target radius.
    #[error("integration aborted at r = {r}: {reason}")]
    Integration { r: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
