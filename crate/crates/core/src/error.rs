use thiserror::Error;

/// Rejections raised by the qubit kernel and the halt-qubit machine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("{what} must be a unit vector (norm {norm}, allowed deviation {tolerance:e})")]
    NotUnit {
        what: &'static str,
        norm: f64,
        tolerance: f64,
    },
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("density matrix trace must be 1, got {trace}")]
    BadTrace { trace: f64 },
    #[error("density matrix is not pure: trace(rho^2) = {purity}")]
    NotPure { purity: f64 },
    #[error("matrix is not unitary (max |U U^dagger - 1| entry {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("{what} drifted off the unit sphere by {drift:e} after evolution")]
    NormDrift { what: &'static str, drift: f64 },
}

pub type Result<T, E = ValidationError> = std::result::Result<T, E>;
