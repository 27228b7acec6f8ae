//! Brute-force system-pointer simulation on a discretized pointer axis.
//!
//! The measurement interaction shifts a Gaussian pointer packet by the
//! eigenvalue of each system branch; reading the pointer coordinate then
//! conditions the system. Built independently of the operator family in
//! [`crate::engine`], so their agreement validates the engine against the
//! underlying interaction model.

use std::f64::consts::PI;

use crate::engine::{outcome_pdf, posterior, DensityMatrix, MeasurementModel, PDF_FLOOR};
use crate::error::{QmeasError, Result};
use crate::linalg::{trace_distance, Complex64, ComplexMatrix, HermitianObservable, StateVector};

/// Shifted packets may lose at most this much probability mass off-grid.
pub const OFF_GRID_LIMIT: f64 = 1e-9;

/// Default pointer spacing is the resolution divided by this.
pub const POINTER_SPACING_DIVISOR: f64 = 200.0;

/// Pointer grid extends this many resolutions beyond the largest eigenvalue.
pub const POINTER_PADDING_SIGMAS: f64 = 10.0;

/// Gaussian pointer packet of variance `delta^2`, sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct PointerWavepacket {
    lo: f64,
    dx: f64,
    len: usize,
    delta: f64,
}

impl PointerWavepacket {
    /// Packet centered at zero on the grid `[lo, hi]` with spacing `dx`.
    pub fn gaussian(delta: f64, lo: f64, hi: f64, dx: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(QmeasError::InvalidResolution(delta));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(QmeasError::InvalidGrid(format!("bad pointer span [{lo}, {hi}]")));
        }
        if !(dx.is_finite() && dx > 0.0 && dx < hi - lo) {
            return Err(QmeasError::InvalidGrid(format!("bad pointer spacing {dx}")));
        }
        let len = ((hi - lo) / dx).round() as usize + 1;
        Ok(Self { lo, dx, len, delta })
    }

    /// Grid sized for the model: eigenvalue span padded by 10 resolutions.
    pub fn for_model(model: &MeasurementModel, dx: f64) -> Result<Self> {
        let reach = model
            .observable()
            .min_eigenvalue()
            .abs()
            .max(model.observable().max_eigenvalue().abs());
        let pad = POINTER_PADDING_SIGMAS * model.resolution();
        Self::gaussian(model.resolution(), -reach - pad, reach + pad, dx)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn node(&self, index: usize) -> f64 {
        self.lo + self.dx * index as f64
    }

    /// Analytic packet amplitude at `x`, center shifted to `center`.
    pub fn amplitude_at(&self, x: f64, center: f64) -> f64 {
        let d2 = self.delta * self.delta;
        (2.0 * PI * d2).powf(-0.25) * (-(x - center).powi(2) / (4.0 * d2)).exp()
    }

    /// Discrete norm `sum |g(x)|^2 dx` of the unshifted packet.
    pub fn norm_squared(&self) -> f64 {
        (0..self.len)
            .map(|i| self.amplitude_at(self.node(i), 0.0).powi(2))
            .sum::<f64>()
            * self.dx
    }
}

/// Entangled system-pointer amplitudes after the shift interaction,
/// indexed by (pointer node, observable eigenbranch).
#[derive(Debug, Clone)]
pub struct JointState {
    lo: f64,
    dx: f64,
    len_x: usize,
    eigenvalues: Vec<f64>,
    basis: ComplexMatrix,
    amp: Vec<Complex64>,
    norm_squared: f64,
}

impl JointState {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn len_x(&self) -> usize {
        self.len_x
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn node(&self, index: usize) -> f64 {
        self.lo + self.dx * index as f64
    }

    /// Discrete norm `sum |amp|^2 dx`; 1 up to truncation tails.
    pub fn norm_squared(&self) -> f64 {
        self.norm_squared
    }

    pub fn amplitude(&self, node_index: usize, branch: usize) -> Complex64 {
        self.amp[node_index * self.dim() + branch]
    }

    /// Pointer-coordinate marginal density at a grid node.
    pub fn marginal_density(&self, node_index: usize) -> f64 {
        let d = self.dim();
        (0..d)
            .map(|k| self.amp[node_index * d + k].norm_sqr())
            .sum::<f64>()
            / self.norm_squared
    }

    /// Index of the grid node closest to `outcome`, clamped to the grid.
    pub fn nearest_node(&self, outcome: f64) -> usize {
        let raw = ((outcome - self.lo) / self.dx).round();
        raw.clamp(0.0, (self.len_x - 1) as f64) as usize
    }
}

/// Shift each eigenbranch's pointer packet by its eigenvalue:
/// `amp(x, k) = g(x - A_k) <A_k|system>`.
///
/// Errors with [`QmeasError::GridOverflow`] when the shifted packets leak
/// more than [`OFF_GRID_LIMIT`] of their mass off the grid.
pub fn entangle(
    system: &StateVector,
    obs: &HermitianObservable,
    meter: &PointerWavepacket,
) -> Result<JointState> {
    if system.dim() != obs.dim() {
        return Err(QmeasError::DimensionMismatch {
            left_rows: system.dim(),
            left_cols: 1,
            right_rows: obs.dim(),
            right_cols: obs.dim(),
        });
    }
    let normalized = system.normalized()?;
    let coefficients = obs.spectrum().coefficients(&normalized);
    let eigenvalues = obs.eigenvalues().to_vec();
    let dim = eigenvalues.len();
    let len_x = meter.len();

    let mut amp = vec![Complex64::ZERO; len_x * dim];
    for ix in 0..len_x {
        let x = meter.node(ix);
        for (k, &a) in eigenvalues.iter().enumerate() {
            amp[ix * dim + k] = coefficients.data()[k] * meter.amplitude_at(x, a);
        }
    }
    let norm_squared: f64 = amp.iter().map(|z| z.norm_sqr()).sum::<f64>() * meter.dx();
    let off_grid_mass = (1.0 - norm_squared).max(0.0);
    if off_grid_mass > OFF_GRID_LIMIT {
        return Err(QmeasError::GridOverflow { off_grid_mass, limit: OFF_GRID_LIMIT });
    }

    Ok(JointState {
        lo: meter.node(0),
        dx: meter.dx(),
        len_x,
        eigenvalues,
        basis: obs.spectrum().eigenvectors().clone(),
        amp,
        norm_squared,
    })
}

/// Read the pointer at `outcome` (snapped to the nearest grid node):
/// marginal density there, plus the conditioned system state rotated back
/// to the original basis.
pub fn readout(joint: &JointState, outcome: f64) -> Result<(f64, StateVector)> {
    assert!(outcome.is_finite(), "outcome must be finite");
    let ix = joint.nearest_node(outcome);
    let density = joint.marginal_density(ix);
    if density <= PDF_FLOOR {
        return Err(QmeasError::NegligibleOutcome { pdf: density, floor: PDF_FLOOR });
    }
    let dim = joint.dim();
    let coefficients =
        StateVector::new((0..dim).map(|k| joint.amplitude(ix, k)).collect())?;
    let conditioned = joint.basis.apply(&coefficients).normalized()?;
    Ok((density, conditioned))
}

/// Outcome of validating the pointer simulation against the operator family.
#[derive(Debug, Clone, Copy)]
pub struct MeterComparison {
    /// Max trace distance between conditioned pointer states and engine
    /// posteriors over the probe outcomes.
    pub max_trace_distance: f64,
    /// Max absolute pointer-marginal vs engine pdf difference over the probes.
    pub max_pdf_error: f64,
    /// Diagnostic only: residual of the canonical commutator applied to the
    /// initial packet with a central-difference momentum. A finite grid
    /// cannot realize the commutator exactly; this reports how close it gets.
    pub commutator_residual: f64,
}

/// Probe a 41-outcome set spanning the spectrum (each snapped to the pointer
/// grid), comparing conditioned states and densities against the engine at
/// the same snapped outcomes.
pub fn compare_with_kraus(
    system: &StateVector,
    model: &MeasurementModel,
    dx: f64,
) -> Result<MeterComparison> {
    if !(dx.is_finite() && dx > 0.0 && dx <= model.resolution() / 100.0) {
        return Err(QmeasError::InvalidGrid(format!(
            "pointer spacing {dx} must be positive and at most resolution/100"
        )));
    }
    let meter = PointerWavepacket::for_model(model, dx)?;
    let joint = entangle(system, model.observable(), &meter)?;
    let rho = DensityMatrix::from_pure(system)?;

    let lo = model.observable().min_eigenvalue() - 2.0 * model.resolution();
    let hi = model.observable().max_eigenvalue() + 2.0 * model.resolution();
    let mut max_trace_distance: f64 = 0.0;
    let mut max_pdf_error: f64 = 0.0;
    for i in 0..41 {
        let probe = lo + (hi - lo) * i as f64 / 40.0;
        let snapped = joint.node(joint.nearest_node(probe));
        let (density, conditioned) = readout(&joint, snapped)?;
        let engine_pdf = outcome_pdf(model, &rho, snapped);
        let engine_posterior = posterior(model, &rho, snapped)?;
        let distance = trace_distance(&conditioned.projector(), engine_posterior.matrix())?;
        max_trace_distance = max_trace_distance.max(distance);
        max_pdf_error = max_pdf_error.max((density - engine_pdf).abs());
    }

    Ok(MeterComparison {
        max_trace_distance,
        max_pdf_error,
        commutator_residual: commutator_residual(&meter),
    })
}

/// `||(x p - p x) psi - i psi|| / ||psi||` on the discrete grid, with
/// `p = -i d/dx` as a central difference and zero padding at the ends.
fn commutator_residual(meter: &PointerWavepacket) -> f64 {
    let n = meter.len();
    let psi: Vec<f64> = (0..n).map(|i| meter.amplitude_at(meter.node(i), 0.0)).collect();
    let momentum = |f: &[f64], i: usize| -> Complex64 {
        let right = if i + 1 < n { f[i + 1] } else { 0.0 };
        let left = if i > 0 { f[i - 1] } else { 0.0 };
        Complex64::new(0.0, -1.0) * (right - left) / (2.0 * meter.dx())
    };
    let x_psi: Vec<f64> = (0..n).map(|i| meter.node(i) * psi[i]).collect();
    let mut residual_sq = 0.0;
    let mut norm_sq = 0.0;
    for i in 0..n {
        let x_p = Complex64::new(meter.node(i), 0.0) * momentum(&psi, i);
        let p_x = momentum(&x_psi, i);
        let target = Complex64::new(0.0, 1.0) * psi[i];
        residual_sq += (x_p - p_x - target).norm_sqr();
        norm_sq += psi[i] * psi[i];
    }
    (residual_sq / norm_sq).sqrt()
}
