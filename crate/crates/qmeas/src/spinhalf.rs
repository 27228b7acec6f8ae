//! Closed-form spin-1/2 readout statistics, kept deliberately independent of
//! the generic engine so agreement between the two is a genuine cross-check.
//!
//! Conventions: `s_z = diag(1/2, -1/2)` in the `{|+Z>, |-Z>}` basis, the
//! measured component is `s_z`, resolution is the Gaussian width `delta`.

use crate::engine::MeasurementModel;
use crate::error::{QmeasError, Result};
use crate::linalg::{Complex64, ComplexMatrix, HermitianObservable, StateVector};

/// `s_x` in the `{|+Z>, |-Z>}` basis.
pub fn spin_x() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::ZERO,
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::ZERO,
        ],
    )
    .expect("static matrix")
}

/// `s_y` in the `{|+Z>, |-Z>}` basis.
pub fn spin_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::ZERO,
            Complex64::new(0.0, -0.5),
            Complex64::new(0.0, 0.5),
            Complex64::ZERO,
        ],
    )
    .expect("static matrix")
}

/// `s_z = diag(1/2, -1/2)`.
pub fn spin_z() -> ComplexMatrix {
    ComplexMatrix::from_diag(&[0.5, -0.5])
}

/// `|+X>`, the `+1/2` eigenstate of `s_x`.
pub fn plus_x() -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_real(&[r, r]).expect("static vector")
}

/// `|+Z>`.
pub fn plus_z() -> StateVector {
    StateVector::basis_state(2, 0)
}

/// `|-Z>`.
pub fn minus_z() -> StateVector {
    StateVector::basis_state(2, 1)
}

/// Measurement model for the `s_z` component at the given resolution.
pub fn spin_z_model(delta: f64) -> Result<MeasurementModel> {
    MeasurementModel::new(HermitianObservable::new(spin_z())?, delta)
}

/// One spin-1/2 readout: resolution `delta` and recorded outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinScenario {
    delta: f64,
    outcome: f64,
}

impl SpinScenario {
    pub fn new(delta: f64, outcome: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(QmeasError::InvalidResolution(delta));
        }
        if !outcome.is_finite() {
            return Err(QmeasError::InvalidGrid(format!("non-finite outcome {outcome}")));
        }
        Ok(Self { delta, outcome })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn outcome(&self) -> f64 {
        self.outcome
    }

    fn tanh_arg(&self) -> f64 {
        self.outcome / (2.0 * self.delta * self.delta)
    }
}

/// Outcome density for the initial state `|+X>`: an equal-weight pair of
/// Gaussians centered on the eigenvalues +-1/2.
///
/// Evaluated as the two-Gaussian sum rather than the equivalent
/// `exp * cosh` product, which overflows at small `delta`.
pub fn spin_pdf(s: &SpinScenario) -> f64 {
    let d2 = s.delta * s.delta;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * d2).sqrt();
    let up = (-(s.outcome - 0.5).powi(2) / (2.0 * d2)).exp();
    let down = (-(s.outcome + 0.5).powi(2) / (2.0 * d2)).exp();
    0.5 * norm * (up + down)
}

/// Bloch expectations of the information-only (noise-free) conditioned state.
///
/// Returns `(sx, sy, sz)`. The x component exceeds 1/2 near outcome 0: the
/// conditioned operator is a quasi-state with negative weight on `|-X>`.
pub fn spin_noise_free_expectations(s: &SpinScenario) -> (f64, f64, f64) {
    let arg = s.tanh_arg();
    let boost = 1.0 / (8.0 * s.delta * s.delta);
    // exp(boost) * sech(arg), evaluated in log space to dodge overflow.
    let sx = 0.5 * (boost - lncosh(arg)).exp();
    let sz = 0.5 * arg.tanh();
    (sx, 0.0, sz)
}

/// Bloch expectations of the conditioned state after the full measurement.
///
/// The Bloch vector has length exactly 1/2 for every outcome (pure state).
pub fn spin_final_expectations(s: &SpinScenario) -> (f64, f64, f64) {
    let arg = s.tanh_arg();
    let sx = 0.5 * (-lncosh(arg)).exp();
    let sz = 0.5 * arg.tanh();
    (sx, 0.0, sz)
}

/// Purity `Tr{rho_m^2}` of the noise-free state at outcome 0: strictly
/// greater than one for every finite resolution, unbounded as `delta -> 0`.
pub fn spin_purity_at_zero(delta: f64) -> f64 {
    assert!(delta.is_finite() && delta > 0.0, "delta must be positive");
    0.5 + 0.5 * (1.0 / (4.0 * delta * delta)).exp()
}

/// Overflow-safe `ln(cosh(x))`.
fn lncosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}
