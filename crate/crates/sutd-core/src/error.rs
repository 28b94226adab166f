//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the library.
///
/// Verification failures are *not* errors: `verify_drawing` returns a report
/// listing violations. Errors mean the input was malformed, a documented
/// precondition did not hold, or a resource guard tripped.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid input (bad sizes, inconsistent fields, values out
    /// of the supported range).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A soft resource guard tripped (instance, tree or grid too large for
    /// the requested exhaustive operation). Callers may retry with an
    /// explicit override where the API offers one.
    #[error("capacity guard exceeded: {0}")]
    CapacityExceeded(String),

    /// Drawing synthesis cannot proceed at spinal descent step `index`
    /// (1-based triple index).
    #[error("synthesis infeasible at step {index}: {reason}")]
    SynthesisInfeasible { index: usize, reason: String },

    /// A drawing does not have the layer structure extraction relies on.
    #[error("structure mismatch at triple {index}: {reason}")]
    StructureMismatch { index: usize, reason: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
