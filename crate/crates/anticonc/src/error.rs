//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by measure construction, quadrature and search routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("insufficient samples: got {got}, need at least {min}")]
    InsufficientSamples { got: usize, min: usize },

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("sub-measure has zero total mass")]
    EmptySubmeasure,

    #[error("zero tail mass at delta = {delta}")]
    ZeroTail { delta: f64 },

    #[error("degenerate law: all mass at the origin")]
    DegenerateLaw,

    #[error("too many generators: r = {r} exceeds materialization cap {max}")]
    TooManyGenerators { r: usize, max: usize },

    /// Quadrature refinement limit hit. Carries the best estimate so callers
    /// can still report a value.
    #[error("quadrature did not converge after {refinements} refinements (best estimate {best}, last change {last_change})")]
    Unconverged {
        best: f64,
        last_change: f64,
        refinements: usize,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
