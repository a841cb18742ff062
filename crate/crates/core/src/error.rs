// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^†| = {0:e})")]
    NotHermitian(f64),
    #[error("dimension {0} outside the supported range 2..=8")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("trace {0} differs from 1")]
    TraceNotUnit(f64),
    #[error("state has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("Bloch vector norm {0} exceeds 1")]
    OutsideBlochBall(f64),
    #[error("operation requires a qubit, got dimension {0}")]
    NotQubit(usize),
    #[error("infinite relative entropy: support of the first argument exceeds the second")]
    InfiniteRelativeEntropy,
    #[error("Hamiltonian is proportional to the identity; no energy scale")]
    NoEnergyScale,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("adaptive quadrature did not converge on [{a}, {b}]")]
    QuadratureFailed { a: f64, b: f64 },
    #[error("positivity lost at t = {t}: eigenvalue {eigenvalue:e} (step too large)")]
    PositivityLost { t: f64, eigenvalue: f64 },
    #[error("trajectory is malformed: {0}")]
    BadTrajectory(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
