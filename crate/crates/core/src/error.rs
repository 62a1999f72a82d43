use thiserror::Error;

use crate::fock::ModeKind;

/// Errors raised while building spaces, operators and states.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid mode configuration: {0}")]
    Config(String),

    #[error("Hilbert dimension {dim} exceeds the dense limit of {limit} basis states")]
    DimensionOverflow { dim: u128, limit: usize },

    #[error("{kind} mode index {index} out of range (have {count})")]
    IndexOutOfRange { kind: ModeKind, index: usize, count: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("safe margin {margin} exceeds boson cutoff {cutoff}")]
    MarginExceedsCutoff { margin: usize, cutoff: usize },

    #[error("supercharge variant mismatch: operation needs {expected}, got {found}")]
    VariantMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("operator is not hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm {0})")]
    Unnormalized(f64),

    #[error("boson cutoff {cutoff} too small, need at least {required}")]
    CutoffTooSmall { required: usize, cutoff: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
