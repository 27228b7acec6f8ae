//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by construction and measurement operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QmeasError {
    /// Input matrix deviates from `M = M^dagger` beyond the accepted tolerance.
    #[error("matrix is not Hermitian: max entrywise |M - M^dagger| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NonHermitianInput { deviation: f64, tolerance: f64 },

    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// A matrix or vector entry is NaN or infinite.
    #[error("non-finite entry at index {index}")]
    NonFiniteEntry { index: usize },

    /// Entry count does not match the declared shape.
    #[error("shape {rows}x{cols} requires {} entries, got {len}", rows * cols)]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    /// Zero-dimensional matrices and vectors are not allowed.
    #[error("dimension must be positive")]
    EmptyDimension,

    /// A density matrix invariant (trace, Hermiticity, positivity) failed.
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    /// Measurement resolution must be strictly positive and finite.
    #[error("invalid measurement resolution {0}: must be finite and > 0")]
    InvalidResolution(f64),

    /// Outcome grid parameters are unusable.
    #[error("invalid outcome grid: {0}")]
    InvalidGrid(String),

    /// Conditioning on an outcome whose probability is below the floor.
    #[error("outcome probability {pdf:.3e} is at or below the floor {floor:.3e}")]
    NegligibleOutcome { pdf: f64, floor: f64 },

    /// Positivity condition is undefined when a diagonal entry vanishes.
    #[error("diagonal entry {index} vanishes; positivity margin undefined")]
    ZeroDiagonal { index: usize },

    /// Shifted pointer packets leak too much probability mass off the grid.
    #[error("pointer grid too narrow: off-grid mass {off_grid_mass:.3e} exceeds {limit:.3e}")]
    GridOverflow { off_grid_mass: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, QmeasError>;
