use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A P-basis grid (or a smearing kernel) is not resolved by the grid step.
    #[error("grid step {step} exceeds the resolution limit {limit} ({reason})")]
    GridResolution {
        step: f64,
        limit: f64,
        reason: &'static str,
    },

    #[error("truncation dim {dim} too small for alpha = {alpha}: discarded mass {tail:e}")]
    Truncation { alpha: f64, dim: usize, tail: f64 },

    #[error("impossible outcome: branch probability {probability:e}")]
    ImpossibleOutcome { probability: f64 },

    #[error("{n} qubits exceeds the supported range {min}..={max}")]
    SizeCap { n: usize, min: usize, max: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("ensemble mixes settings {0:?} and {1:?}")]
    MixedSettings(String, String),

    #[error("no steering signature at alpha = {alpha}")]
    NoSignature { alpha: f64 },

    #[error("conditioning cell {cell} has {count} records, need at least {needed}")]
    InsufficientRecords {
        cell: String,
        count: usize,
        needed: usize,
    },
}
