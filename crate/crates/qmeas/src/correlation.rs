//! Correlation between the squared outcome and a second observable,
//! computed both by quadrature over the outcome axis and by a closed
//! operator formula on the outcome-averaged state. The two routes must
//! agree; their discrepancy is the module's self-check.

use crate::engine::{
    outcome_moments, outcome_pdf, total_channel, DensityMatrix, MeasurementModel, OutcomeGrid,
};
use crate::error::{QmeasError, Result};
use crate::linalg::{expectation, spectral_apply, HermitianObservable};
use crate::quasi::weighted_information_matrix;
use crate::spinhalf::{spin_x, spin_z_model};

/// Numeric/analytic disagreement beyond this is flagged.
pub const DISCREPANCY_FLAG: f64 = 1e-7;

/// Which conditioned state enters outcome averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosteriorFamily {
    /// The ordinary posterior after the full measurement.
    Final,
    /// The information-only (noise-free) conditioned quasi-state.
    Information,
}

/// Two-route evaluation of the squared-outcome correlation.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub numeric: f64,
    pub analytic: f64,
    pub dim: usize,
    pub delta: f64,
    pub b_label: String,
}

impl CorrelationReport {
    pub fn discrepancy(&self) -> f64 {
        (self.numeric - self.analytic).abs()
    }

    pub fn is_flagged(&self) -> bool {
        self.discrepancy() > DISCREPANCY_FLAG
    }
}

/// `C(a^2; <B>)` by Simpson quadrature:
/// `integral p(a) Tr{rho_f(a) B} a^2 da  -  Tr{rho_tot B} (delta^2 + Tr{rho_tot A^2})`.
///
/// The integrand is evaluated as `Tr{P rho P B}` so outcomes of negligible
/// probability contribute zero instead of dividing by zero.
pub fn correlation_numeric(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    b: &HermitianObservable,
    grid: &OutcomeGrid,
) -> f64 {
    assert_eq!(model.dim(), b.dim(), "observable dimensions must match");
    assert_eq!(model.dim(), rho_i.dim(), "state dimension must match");

    let term1 = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .map(|(&a, &w)| w * a * a * conditioned_expectation(model, rho_i, b, a))
        .sum::<f64>();

    let rho_tot = total_channel(model, rho_i);
    let a_sq = spectral_apply(|x| x * x, model.observable());
    let term2 = rho_tot.expect(b.matrix()).expect("matching dims")
        * (model.variance() + rho_tot.expect(&a_sq).expect("matching dims"));
    term1 - term2
}

/// `p(a) Tr{rho_f(a) B}` without normalizing: in the observable eigenbasis,
/// `sum_ij w_i(a) rho_ij w_j(a) B_ji` with the Gaussian operator weights.
fn conditioned_expectation(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    b: &HermitianObservable,
    outcome: f64,
) -> f64 {
    let d2 = model.variance();
    let norm = (2.0 * std::f64::consts::PI * d2).powf(-0.25);
    let spectrum = model.observable().spectrum();
    let eigenvalues = spectrum.eigenvalues();
    let n = eigenvalues.len();
    let rho_basis = spectrum.to_eigenbasis(rho_i.matrix());
    let b_basis = spectrum.to_eigenbasis(b.matrix());
    let weights: Vec<f64> = eigenvalues
        .iter()
        .map(|&l| norm * (-(l - outcome).powi(2) / (4.0 * d2)).exp())
        .collect();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += weights[i] * weights[j] * (rho_basis.get(i, j) * b_basis.get(j, i)).re;
        }
    }
    sum
}

/// `C(a^2; <B>)` in closed form on the outcome-averaged state:
/// `(1/4) <A^2 B + 2 A B A + B A^2>_tot - <A^2>_tot <B>_tot`.
pub fn correlation_analytic(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    b: &HermitianObservable,
) -> f64 {
    assert_eq!(model.dim(), b.dim(), "observable dimensions must match");
    assert_eq!(model.dim(), rho_i.dim(), "state dimension must match");

    let rho_tot = total_channel(model, rho_i);
    let a = model.observable().matrix();
    let a_sq = spectral_apply(|x| x * x, model.observable());
    let bm = b.matrix();

    let aba = a.mul(bm).mul(a);
    let symmetric = a_sq
        .mul(bm)
        .add(&aba.scale(crate::linalg::Complex64::new(2.0, 0.0)))
        .add(&bm.mul(&a_sq));
    let first = 0.25 * expectation(rho_tot.matrix(), &symmetric).expect("matching dims").re;
    let second = rho_tot.expect(&a_sq).expect("matching dims")
        * rho_tot.expect(bm).expect("matching dims");
    first - second
}

/// Both routes plus their discrepancy, packaged for reporting.
pub fn correlate(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    b: &HermitianObservable,
    grid: &OutcomeGrid,
    b_label: impl Into<String>,
) -> CorrelationReport {
    let numeric = correlation_numeric(model, rho_i, b, grid);
    let analytic = correlation_analytic(model, rho_i, b);
    CorrelationReport {
        numeric,
        analytic,
        dim: model.dim(),
        delta: model.resolution(),
        b_label: b_label.into(),
    }
}

/// Outcome average `integral p(a) <B>_state(a) da` for either conditioned family.
pub fn outcome_average(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    b: &HermitianObservable,
    grid: &OutcomeGrid,
    family: PosteriorFamily,
) -> f64 {
    grid.nodes()
        .iter()
        .zip(grid.weights())
        .map(|(&a, &w)| match family {
            PosteriorFamily::Final => w * conditioned_expectation(model, rho_i, b, a),
            PosteriorFamily::Information => {
                let weighted = weighted_information_matrix(model, rho_i, a);
                w * expectation(&weighted, b.matrix()).expect("matching dims").re
            }
        })
        .sum()
}

/// Noise-free variant of the correlation: averages taken with the
/// information-only quasi-states, whose mixture restores the initial state.
pub fn correlation_noise_free(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    b: &HermitianObservable,
    grid: &OutcomeGrid,
) -> f64 {
    assert_eq!(model.dim(), b.dim(), "observable dimensions must match");
    let term1 = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .map(|(&a, &w)| {
            let weighted = weighted_information_matrix(model, rho_i, a);
            w * a * a * expectation(&weighted, b.matrix()).expect("matching dims").re
        })
        .sum::<f64>();
    let (_, second_moment) = outcome_moments(model, rho_i);
    term1 - second_moment * rho_i.expect(b.matrix()).expect("matching dims")
}

/// Spin-1/2 identity for measuring `s_z` and tracking `s_x`: returns
/// `(lhs, rhs)` of
/// `avg(a^2 <s_x>) - avg(a^2) avg(<s_x>) = -(1/4) avg(<s_x>)`,
/// all averages over the outcome distribution with full posteriors.
///
/// Anticommutation of the spin components makes the two sides agree for
/// every 2-level initial state and every resolution.
pub fn spin_correlation_identity(rho_i: &DensityMatrix, delta: f64) -> Result<(f64, f64)> {
    if rho_i.dim() != 2 {
        return Err(QmeasError::DimensionMismatch {
            left_rows: rho_i.dim(),
            left_cols: rho_i.dim(),
            right_rows: 2,
            right_cols: 2,
        });
    }
    let model = spin_z_model(delta)?;
    let grid = crate::engine::default_grid(&model);
    let b = HermitianObservable::new(spin_x())?;

    let mut avg_sq_sx = 0.0;
    let mut avg_sq = 0.0;
    let mut avg_sx = 0.0;
    for (&a, &w) in grid.nodes().iter().zip(grid.weights()) {
        let weighted_sx = conditioned_expectation(&model, rho_i, &b, a);
        let pdf = outcome_pdf(&model, rho_i, a);
        avg_sq_sx += w * a * a * weighted_sx;
        avg_sq += w * a * a * pdf;
        avg_sx += w * weighted_sx;
    }
    let lhs = avg_sq_sx - avg_sq * avg_sx;
    let rhs = -0.25 * avg_sx;
    Ok((lhs, rhs))
}
