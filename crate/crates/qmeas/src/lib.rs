//! Finite-resolution quantum measurement for finite-dimensional systems.
//!
//! A measurement of a Hermitian observable with Gaussian resolution `delta`
//! is modeled by an operator family over a continuous outcome axis. The crate
//! provides:
//!
//! - outcome statistics, conditional posteriors, and the outcome-averaged
//!   decoherence channel ([`engine`]);
//! - the separation of each readout into an information step and a noise
//!   step, including quasi-states with negative eigenvalues and purity
//!   beyond one ([`quasi`]);
//! - correlation statistics between the squared outcome and a second
//!   observable, by quadrature and in closed form ([`correlation`]);
//! - closed-form spin-1/2 statistics serving as an independent analytic
//!   cross-check ([`spinhalf`]);
//! - a brute-force system-pointer simulation validating the operator family
//!   against the underlying shift interaction ([`meter`]).
//!
//! All quantities are dimensionless. States and operators are immutable
//! after construction and every operation is a pure function.

pub mod correlation;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod meter;
pub mod quasi;
pub mod random;
pub mod spinhalf;

pub use correlation::{
    correlate, correlation_analytic, correlation_noise_free, correlation_numeric,
    outcome_average, spin_correlation_identity, CorrelationReport, PosteriorFamily,
};
pub use engine::{
    decoherence_factor, default_grid, kraus, outcome_moments, outcome_pdf, posterior,
    total_channel, DensityMatrix, MeasurementModel, OutcomeGrid, PDF_FLOOR,
};
pub use error::{QmeasError, Result};
pub use linalg::{
    eig_hermitian, expectation, spectral_apply, tensor_product, trace_distance, Complex64,
    ComplexMatrix, HermitianObservable, SpectralDecomposition, StateVector,
};
pub use meter::{compare_with_kraus, entangle, readout, JointState, MeterComparison, PointerWavepacket};
pub use quasi::{
    noise_free_state, positivity_condition, reconstruct_initial, worst_positivity_margin,
    QuasiDensityMatrix,
};
