use thiserror::Error;

use crate::lattice::IntVec;
use crate::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("series alignment mismatch: {0}")]
    Alignment(String),

    /// A vanishing eigenvalue difference was hit while solving a triangular system.
    #[error("degenerate eigenvalue difference at index {index}")]
    Degeneracy { index: IntVec },

    #[error("degenerate diagonal in triangular system: {0}")]
    DegenerateDiagonal(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero mass in component {0}")]
    ZeroMass(usize),

    #[error("normalization failed: leading coefficient of m_{partition} vanishes")]
    Normalization { partition: IntVec },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("ill-conditioned evaluation point: {0}")]
    Conditioning(String),

    #[error("eigenvalue degeneracy inside degree block: E({partition}) = E({other}) = {value}")]
    BlockDegeneracy {
        partition: IntVec,
        other: IntVec,
        value: Rat,
    },
}

impl Error {
    /// True for the errors that signal an exact eigenvalue coincidence.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::Degeneracy { .. } | Error::DegenerateDiagonal(_) | Error::BlockDegeneracy { .. }
        )
    }
}
