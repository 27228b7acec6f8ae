//! Gaussian measurement-operator family: outcome statistics, conditional
//! posteriors, and the outcome-averaged decoherence channel.
//!
//! A measurement of observable `A` with resolution `delta` is represented by
//! the operator family `P(a) = (2 pi delta^2)^(-1/4) exp(-(A - a)^2 / (4 delta^2))`
//! over the continuous outcome axis `a`. Small `delta` recovers projective
//! measurement; large `delta` leaves the state almost untouched.

use std::f64::consts::PI;

use crate::error::{QmeasError, Result};
use crate::linalg::{
    expectation, spectral_apply, Complex64, ComplexMatrix, HermitianObservable, StateVector,
    HERMITICITY_TOL,
};

/// Outcome probabilities at or below this floor cannot be conditioned on.
pub const PDF_FLOOR: f64 = 1e-300;

/// Node count of the default outcome grid.
pub const DEFAULT_GRID_POINTS: usize = 4001;

/// Half-width padding of the default grid, in units of the resolution.
pub const GRID_PADDING_SIGMAS: f64 = 8.0;

/// Observable plus measurement resolution; fixes the operator family.
#[derive(Debug, Clone)]
pub struct MeasurementModel {
    observable: HermitianObservable,
    resolution: f64,
}

impl MeasurementModel {
    pub fn new(observable: HermitianObservable, resolution: f64) -> Result<Self> {
        if !(resolution.is_finite() && resolution > 0.0) {
            return Err(QmeasError::InvalidResolution(resolution));
        }
        Ok(Self { observable, resolution })
    }

    pub fn observable(&self) -> &HermitianObservable {
        &self.observable
    }

    pub fn dim(&self) -> usize {
        self.observable.dim()
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// `delta^2`.
    pub fn variance(&self) -> f64 {
        self.resolution * self.resolution
    }
}

/// Physical state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Trace must match 1 within this tolerance.
    pub const TRACE_TOL: f64 = 1e-10;
    /// Eigenvalues may undershoot zero by round-off down to this floor.
    pub const EIGENVALUE_FLOOR: f64 = -1e-10;

    /// Validate Hermiticity, unit trace, and positive semidefiniteness.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(QmeasError::InvalidDensityMatrix(format!(
                "matrix is {}x{}, not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.hermitian_deviation();
        if dev > HERMITICITY_TOL {
            return Err(QmeasError::InvalidDensityMatrix(format!(
                "hermiticity deviation {dev:.3e} exceeds {HERMITICITY_TOL:.1e}"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > Self::TRACE_TOL || trace.im.abs() > Self::TRACE_TOL {
            return Err(QmeasError::InvalidDensityMatrix(format!(
                "trace {} + {}i differs from 1",
                trace.re, trace.im
            )));
        }
        let symmetrized = matrix.symmetrized();
        let spectrum = crate::linalg::eig_hermitian(&symmetrized)?;
        let min_eig = spectrum.eigenvalues()[0];
        if min_eig < Self::EIGENVALUE_FLOOR {
            return Err(QmeasError::InvalidDensityMatrix(format!(
                "minimum eigenvalue {min_eig:.3e} below {:.1e}",
                Self::EIGENVALUE_FLOOR
            )));
        }
        Ok(Self { matrix: symmetrized })
    }

    /// For outputs whose invariants hold by construction (posteriors, channels).
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermitian_deviation() <= 1e-9);
        debug_assert!((matrix.trace().re - 1.0).abs() <= 1e-9);
        Self { matrix }
    }

    /// Projector onto the (normalized) state vector.
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        Ok(Self { matrix: state.normalized()?.projector() })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `Tr{rho^2}`; 1 for pure states, `1/dim` for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        expectation(&self.matrix, &self.matrix).expect("matching dims").re
    }

    /// Real expectation value `Tr{rho B}` for a Hermitian `B`.
    pub fn expect(&self, b: &ComplexMatrix) -> Result<f64> {
        Ok(expectation(&self.matrix, b)?.re)
    }
}

/// Composite-Simpson quadrature rule over the continuous outcome axis.
#[derive(Debug, Clone)]
pub struct OutcomeGrid {
    lo: f64,
    hi: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl OutcomeGrid {
    /// `n` must be odd and at least 3 (Simpson panels pair nodes).
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(QmeasError::InvalidGrid(format!("non-finite bounds [{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(QmeasError::InvalidGrid(format!("lo {lo} must be below hi {hi}")));
        }
        if n < 3 || n % 2 == 0 {
            return Err(QmeasError::InvalidGrid(format!("node count {n} must be odd and >= 3")));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| lo + h * i as f64).collect();
        nodes[n - 1] = hi;
        let weights = (0..n)
            .map(|i| {
                let factor = if i == 0 || i == n - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                factor * h / 3.0
            })
            .collect();
        Ok(Self { lo, hi, nodes, weights })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.len() - 1) as f64
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Simpson integral of a scalar function over the grid.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// The measurement operator `P(outcome)` for the model.
///
/// Hermitian, positive definite, commutes with the observable; its
/// eigenvalues are Gaussian weights over the observable's spectrum.
pub fn kraus(model: &MeasurementModel, outcome: f64) -> ComplexMatrix {
    assert!(outcome.is_finite(), "outcome must be finite");
    let d2 = model.variance();
    let norm = (2.0 * PI * d2).powf(-0.25);
    spectral_apply(
        |a| norm * (-(a - outcome).powi(2) / (4.0 * d2)).exp(),
        model.observable(),
    )
}

/// Outcome probability density `Tr{P(outcome)^2 rho}`.
///
/// Nonnegative, and integrates to 1 over the (sufficiently padded) axis.
pub fn outcome_pdf(model: &MeasurementModel, rho: &DensityMatrix, outcome: f64) -> f64 {
    assert!(outcome.is_finite(), "outcome must be finite");
    let d2 = model.variance();
    let norm = (2.0 * PI * d2).powf(-0.5);
    let spectrum = model.observable().spectrum();
    let diag = spectrum.to_eigenbasis(rho.matrix());
    let mut pdf = 0.0;
    for (i, &a) in spectrum.eigenvalues().iter().enumerate() {
        let weight = norm * (-(a - outcome).powi(2) / (2.0 * d2)).exp();
        pdf += weight * diag.get(i, i).re;
    }
    pdf.max(0.0)
}

/// Conditioned state after recording `outcome`: `P rho P / p(outcome)`.
///
/// Pure states stay pure. Errors with [`QmeasError::NegligibleOutcome`] when
/// the outcome probability is at or below [`PDF_FLOOR`].
pub fn posterior(
    model: &MeasurementModel,
    rho: &DensityMatrix,
    outcome: f64,
) -> Result<DensityMatrix> {
    let pdf = outcome_pdf(model, rho, outcome);
    if pdf <= PDF_FLOOR {
        return Err(QmeasError::NegligibleOutcome { pdf, floor: PDF_FLOOR });
    }
    let p = kraus(model, outcome);
    let conditioned = p.mul(rho.matrix()).mul(&p);
    let trace = conditioned.trace().re;
    let normalized = conditioned.scale(Complex64::new(1.0 / trace, 0.0)).symmetrized();
    Ok(DensityMatrix::new_unchecked(normalized))
}

/// Outcome-averaged post-measurement state, via the closed form: in the
/// observable eigenbasis each coherence is damped by the decoherence factor
/// of its eigenvalue pair while the diagonal stays untouched.
pub fn total_channel(model: &MeasurementModel, rho: &DensityMatrix) -> DensityMatrix {
    let spectrum = model.observable().spectrum();
    let eigenvalues = spectrum.eigenvalues();
    let n = eigenvalues.len();
    let mut in_basis = spectrum.to_eigenbasis(rho.matrix());
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let factor = decoherence_factor(model, eigenvalues[i], eigenvalues[j]);
            let damped = in_basis.get(i, j) * factor;
            in_basis.set(i, j, damped);
        }
    }
    let back = spectrum.from_eigenbasis(&in_basis).symmetrized();
    DensityMatrix::new_unchecked(back)
}

/// Coherence attenuation `exp(-(a1 - a2)^2 / (8 delta^2))` between eigenvalues.
pub fn decoherence_factor(model: &MeasurementModel, a1: f64, a2: f64) -> f64 {
    let gap = a1 - a2;
    (-(gap * gap) / (8.0 * model.variance())).exp()
}

/// Mean and second moment of the outcome distribution, evaluated in closed
/// form: the mean is `<A>`, the second moment `<A^2> + delta^2`.
pub fn outcome_moments(model: &MeasurementModel, rho: &DensityMatrix) -> (f64, f64) {
    let a = model.observable().matrix();
    let a_sq = spectral_apply(|x| x * x, model.observable());
    let mean = expectation(rho.matrix(), a).expect("matching dims").re;
    let second = expectation(rho.matrix(), &a_sq).expect("matching dims").re + model.variance();
    (mean, second)
}

/// Default outcome grid: the spectrum padded by 8 resolutions on each side,
/// 4001 Simpson nodes. Truncated Gaussian mass per eigenvalue is below 1e-15.
pub fn default_grid(model: &MeasurementModel) -> OutcomeGrid {
    let pad = GRID_PADDING_SIGMAS * model.resolution();
    let lo = model.observable().min_eigenvalue() - pad;
    let hi = model.observable().max_eigenvalue() + pad;
    OutcomeGrid::new(lo, hi, DEFAULT_GRID_POINTS).expect("padded grid is valid")
}

/// Count interior local maxima of a sampled curve by derivative sign changes.
pub fn count_local_maxima(samples: &[f64]) -> usize {
    let mut count = 0;
    let mut last_sign = 0i8;
    for pair in samples.windows(2) {
        let diff = pair[1] - pair[0];
        let sign = if diff > 0.0 {
            1
        } else if diff < 0.0 {
            -1
        } else {
            continue;
        };
        if last_sign == 1 && sign == -1 {
            count += 1;
        }
        last_sign = sign;
    }
    count
}
