//! Separation of a readout into an information step and a noise step.
//!
//! Conditioning the *initial* state on an outcome, without the decoherence the
//! measurement interaction causes, yields an operator that is Hermitian with
//! unit trace and a nonnegative diagonal in the observable eigenbasis, but
//! need not be positive: its negative eigenvalues are the signature of
//! coherence too strong to survive noise-free conditioning. Multiplying its
//! coherences by the decoherence factors recovers the ordinary posterior.

use crate::engine::{outcome_pdf, DensityMatrix, MeasurementModel, OutcomeGrid, PDF_FLOOR};
use crate::error::{QmeasError, Result};
use crate::linalg::{eig_hermitian, expectation, Complex64, ComplexMatrix};

/// Eigenbasis diagonal entries may undershoot zero by round-off to this floor.
pub const DIAGONAL_FLOOR: f64 = -1e-12;

/// Information-only conditioned operator: Hermitian, unit trace, nonnegative
/// diagonal in the basis it was built in, possibly indefinite.
///
/// Deliberately a distinct type from [`DensityMatrix`] so positivity-assuming
/// code cannot receive one by accident.
#[derive(Debug, Clone)]
pub struct QuasiDensityMatrix {
    matrix: ComplexMatrix,
    basis: ComplexMatrix,
}

impl QuasiDensityMatrix {
    /// The operator, in the same basis as the inputs it was built from.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvector columns of the observable basis this operator was built in.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// A genuine state viewed as a quasi-state (computational basis tag).
    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self {
            matrix: rho.matrix().clone(),
            basis: ComplexMatrix::identity(rho.dim()),
        }
    }

    /// `Tr{q^2}`; exceeds 1 exactly when the operator is indefinite enough.
    pub fn purity(&self) -> f64 {
        expectation(&self.matrix, &self.matrix).expect("matching dims").re
    }

    /// Minimum eigenvalue and total negativity `sum |lambda| - 1`.
    ///
    /// The total negativity is zero (to round-off) exactly on genuine states.
    pub fn negativity(&self) -> (f64, f64) {
        let spectrum = eig_hermitian(&self.matrix).expect("quasi-state is Hermitian");
        let min_eigenvalue = spectrum.eigenvalues()[0];
        let abs_sum: f64 = spectrum.eigenvalues().iter().map(|l| l.abs()).sum();
        (min_eigenvalue, (abs_sum - 1.0).max(0.0))
    }

    /// Real expectation value `Tr{q B}` for Hermitian `B`; may fall outside
    /// the spectrum of `B` when the quasi-state is indefinite.
    pub fn expect(&self, b: &ComplexMatrix) -> Result<f64> {
        Ok(expectation(&self.matrix, b)?.re)
    }
}

/// `p(outcome) * rho_m(outcome)` without the probability division: each
/// eigenbasis entry of the input reweighted by the Gaussian centered on the
/// pair's mean eigenvalue. Stable at outcomes of negligible probability.
pub(crate) fn weighted_information_matrix(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    outcome: f64,
) -> ComplexMatrix {
    let d2 = model.variance();
    let norm = (2.0 * std::f64::consts::PI * d2).powf(-0.5);
    let spectrum = model.observable().spectrum();
    let eigenvalues = spectrum.eigenvalues();
    let n = eigenvalues.len();
    let mut in_basis = spectrum.to_eigenbasis(rho_i.matrix());
    for i in 0..n {
        for j in 0..n {
            let mean = 0.5 * (eigenvalues[i] + eigenvalues[j]);
            let weight = norm * (-(mean - outcome).powi(2) / (2.0 * d2)).exp();
            let scaled = in_basis.get(i, j) * weight;
            in_basis.set(i, j, scaled);
        }
    }
    spectrum.from_eigenbasis(&in_basis).symmetrized()
}

/// Information-only conditioned state `rho_m(outcome)`.
///
/// Multiplying its eigenbasis coherences by the decoherence factors
/// reproduces the ordinary posterior exactly.
pub fn noise_free_state(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    outcome: f64,
) -> Result<QuasiDensityMatrix> {
    let pdf = outcome_pdf(model, rho_i, outcome);
    if pdf <= PDF_FLOOR {
        return Err(QmeasError::NegligibleOutcome { pdf, floor: PDF_FLOOR });
    }
    let weighted = weighted_information_matrix(model, rho_i, outcome);
    let matrix = weighted.scale(Complex64::new(1.0 / pdf, 0.0));

    let spectrum = model.observable().spectrum();
    let in_basis = spectrum.to_eigenbasis(&matrix);
    for i in 0..matrix.rows() {
        let d = in_basis.get(i, i).re;
        if d < DIAGONAL_FLOOR {
            return Err(QmeasError::InvalidDensityMatrix(format!(
                "input state not positive enough: conditioned diagonal {d:.3e}"
            )));
        }
    }
    debug_assert!((matrix.trace().re - 1.0).abs() < 1e-9);

    Ok(QuasiDensityMatrix { matrix, basis: spectrum.eigenvectors().clone() })
}

/// Simpson mixture `integral p(a) rho_m(a) da`; reconstructs the initial
/// state when the grid covers the spectrum with enough padding.
pub fn reconstruct_initial(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    grid: &OutcomeGrid,
) -> ComplexMatrix {
    let n = rho_i.dim();
    let mut acc = ComplexMatrix::zeros(n, n);
    for (&node, &weight) in grid.nodes().iter().zip(grid.weights()) {
        let contribution = weighted_information_matrix(model, rho_i, node);
        acc = acc.add(&contribution.scale(Complex64::new(weight, 0.0)));
    }
    acc
}

/// Positivity margin of the eigenvalue pair `(i, j)` in the observable basis:
/// `exp(-(A_i - A_j)^2 / (4 delta^2)) - |rho_ij|^2 / (rho_ii rho_jj)`.
///
/// Nonnegative margin means every `rho_m(outcome)` stays positive on that
/// pair; a negative margin certifies some outcome yields an indefinite state.
pub fn positivity_condition(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
    i: usize,
    j: usize,
) -> Result<f64> {
    let n = rho_i.dim();
    assert!(i < n && j < n && i != j, "indices must be distinct and in range");
    let spectrum = model.observable().spectrum();
    let in_basis = spectrum.to_eigenbasis(rho_i.matrix());
    let pii = in_basis.get(i, i).re;
    let pjj = in_basis.get(j, j).re;
    if pii <= 0.0 {
        return Err(QmeasError::ZeroDiagonal { index: i });
    }
    if pjj <= 0.0 {
        return Err(QmeasError::ZeroDiagonal { index: j });
    }
    let gap = spectrum.eigenvalues()[i] - spectrum.eigenvalues()[j];
    let coherence_ratio = in_basis.get(i, j).norm_sqr() / (pii * pjj);
    Ok((-(gap * gap) / (4.0 * model.variance())).exp() - coherence_ratio)
}

/// Worst pairwise positivity margin and the pair achieving it.
///
/// Pairs with a vanishing diagonal are skipped: positivity forces the
/// corresponding coherence to vanish too, so the condition holds trivially.
/// `None` when no pair has two positive diagonals.
pub fn worst_positivity_margin(
    model: &MeasurementModel,
    rho_i: &DensityMatrix,
) -> Option<(f64, (usize, usize))> {
    let n = rho_i.dim();
    let mut worst: Option<(f64, (usize, usize))> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            if let Ok(margin) = positivity_condition(model, rho_i, i, j) {
                if worst.map_or(true, |(w, _)| margin < w) {
                    worst = Some((margin, (i, j)));
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{decoherence_factor, default_grid, posterior};
    use crate::spinhalf::{plus_x, spin_x, spin_y, spin_z_model};
    use approx::assert_abs_diff_eq;

    fn plus_x_state() -> DensityMatrix {
        DensityMatrix::from_pure(&plus_x()).unwrap()
    }

    #[test]
    fn noise_free_spin_at_zero_boosts_coherence() {
        let model = spin_z_model(0.5).unwrap();
        let q = noise_free_state(&model, &plus_x_state(), 0.0).unwrap();
        let boosted = 0.5f64.exp() / 2.0;
        assert_abs_diff_eq!(q.matrix().get(0, 1).re, boosted, epsilon = 1e-13);
        assert_abs_diff_eq!(q.expect(&spin_x()).unwrap(), boosted, epsilon = 1e-13);
        assert_abs_diff_eq!(q.expect(&spin_x()).unwrap(), 0.82436, epsilon = 1e-5);
        assert_abs_diff_eq!(q.expect(&spin_y()).unwrap(), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(q.matrix().trace().re, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn noise_free_of_diagonal_state_is_a_state() {
        let model = spin_z_model(0.4).unwrap();
        let rho = DensityMatrix::new(ComplexMatrix::from_diag(&[0.3, 0.7])).unwrap();
        let q = noise_free_state(&model, &rho, 0.35).unwrap();
        assert!(q.matrix().get(0, 1).norm() < 1e-15);
        let (min_eig, total_neg) = q.negativity();
        assert!(min_eig >= -1e-12);
        assert!(total_neg < 1e-12);
        // classical Bayes reweighting toward the observed eigenvalue
        assert!(q.matrix().get(0, 0).re > 0.3);
    }

    #[test]
    fn noise_free_min_eigenvalue_is_negative() {
        let model = spin_z_model(0.5).unwrap();
        let q = noise_free_state(&model, &plus_x_state(), 0.0).unwrap();
        let (min_eig, total_neg) = q.negativity();
        assert_abs_diff_eq!(min_eig, (1.0 - 0.5f64.exp()) / 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(min_eig, -0.32436, epsilon = 1e-5);
        assert_abs_diff_eq!(total_neg, 0.5f64.exp() - 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(total_neg, 0.64872, epsilon = 1e-5);
    }

    #[test]
    fn factorization_recovers_posterior() {
        let model = spin_z_model(0.5).unwrap();
        let rho = plus_x_state();
        for outcome in [-0.8, -0.2, 0.0, 0.3, 1.1] {
            let q = noise_free_state(&model, &rho, outcome).unwrap();
            let post = posterior(&model, &rho, outcome).unwrap();
            let spectrum = model.observable().spectrum();
            let q_basis = spectrum.to_eigenbasis(q.matrix());
            let post_basis = spectrum.to_eigenbasis(post.matrix());
            let eigenvalues = spectrum.eigenvalues();
            for i in 0..2 {
                for j in 0..2 {
                    let factor = decoherence_factor(&model, eigenvalues[i], eigenvalues[j]);
                    let rebuilt = q_basis.get(i, j) * factor;
                    let diff = (rebuilt - post_basis.get(i, j)).norm();
                    assert!(diff < 1e-10, "entry ({i},{j}) at outcome {outcome}: {diff:.3e}");
                }
            }
        }
    }

    #[test]
    fn reconstruct_plus_x() {
        let model = spin_z_model(0.5).unwrap();
        let rho = plus_x_state();
        let grid = default_grid(&model);
        let rebuilt = reconstruct_initial(&model, &rho, &grid);
        let residual = rebuilt.sub(rho.matrix()).frobenius_norm();
        assert!(residual < 1e-8, "residual {residual:.3e}");
    }

    #[test]
    fn reconstruct_maximally_mixed_exactly() {
        let model = spin_z_model(0.3).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        let grid = default_grid(&model);
        let rebuilt = reconstruct_initial(&model, &rho, &grid);
        assert!(rebuilt.sub(rho.matrix()).frobenius_norm() < 1e-9);
    }

    #[test]
    fn reconstruct_matches_explicit_mixture() {
        // same integral assembled through the public noise_free_state path
        let model = spin_z_model(0.5).unwrap();
        let rho = plus_x_state();
        let grid = default_grid(&model);
        let mut acc = ComplexMatrix::zeros(2, 2);
        for (&node, &weight) in grid.nodes().iter().zip(grid.weights()) {
            let pdf = outcome_pdf(&model, &rho, node);
            if pdf <= PDF_FLOOR {
                continue;
            }
            let q = noise_free_state(&model, &rho, node).unwrap();
            acc = acc.add(&q.matrix().scale(Complex64::new(weight * pdf, 0.0)));
        }
        let stable = reconstruct_initial(&model, &rho, &grid);
        assert!(acc.sub(&stable).max_abs() < 1e-12);
        assert!(acc.sub(rho.matrix()).frobenius_norm() < 1e-8);
    }

    #[test]
    fn positivity_margin_plus_x() {
        let model = spin_z_model(0.5).unwrap();
        let margin = positivity_condition(&model, &plus_x_state(), 0, 1).unwrap();
        assert_abs_diff_eq!(margin, (-1.0f64).exp() - 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(margin, -0.63212, epsilon = 1e-5);
        assert_eq!(
            worst_positivity_margin(&model, &plus_x_state()),
            Some((margin, (0, 1)))
        );
    }

    #[test]
    fn positivity_margin_diagonal_state() {
        let model = spin_z_model(0.5).unwrap();
        let rho = DensityMatrix::new(ComplexMatrix::from_diag(&[0.4, 0.6])).unwrap();
        let margin = positivity_condition(&model, &rho, 0, 1).unwrap();
        assert_abs_diff_eq!(margin, (-1.0f64).exp(), epsilon = 1e-14);
        assert!(margin > 0.0);
    }

    #[test]
    fn positivity_margin_weak_limit_boundary() {
        // resolution so coarse the decoherence factor rounds to 1
        let model = spin_z_model(1e9).unwrap();
        let margin = positivity_condition(&model, &plus_x_state(), 0, 1).unwrap();
        assert!(margin.abs() < 1e-15, "margin {margin:.3e}");
    }

    #[test]
    fn positivity_margin_zero_diagonal_errors() {
        let model = spin_z_model(0.5).unwrap();
        // |+Z> carries no weight; ascending eigenvalue order puts it at index 1
        let rho = DensityMatrix::new(ComplexMatrix::from_diag(&[0.0, 1.0])).unwrap();
        assert!(matches!(
            positivity_condition(&model, &rho, 0, 1),
            Err(QmeasError::ZeroDiagonal { index: 1 })
        ));
    }

    #[test]
    fn purity_examples() {
        let model = spin_z_model(0.5).unwrap();
        let q = noise_free_state(&model, &plus_x_state(), 0.0).unwrap();
        assert_abs_diff_eq!(q.purity(), 0.5 + 0.5 * 1f64.exp(), epsilon = 1e-13);
        assert_abs_diff_eq!(q.purity(), 1.85914, epsilon = 1e-5);

        let pure = QuasiDensityMatrix::from_density(&plus_x_state());
        assert_abs_diff_eq!(pure.purity(), 1.0, epsilon = 1e-13);

        let mixed = QuasiDensityMatrix::from_density(&DensityMatrix::maximally_mixed(2));
        assert_abs_diff_eq!(mixed.purity(), 0.5, epsilon = 1e-13);
    }

    #[test]
    fn negativity_of_genuine_states_vanishes() {
        let mixed = QuasiDensityMatrix::from_density(&DensityMatrix::maximally_mixed(3));
        let (min_eig, total_neg) = mixed.negativity();
        assert!(min_eig >= -1e-12);
        assert!(total_neg < 1e-12);
    }

    #[test]
    fn negativity_vanishes_at_quantized_outcomes() {
        let model = spin_z_model(0.1).unwrap();
        for outcome in [-0.5, 0.5] {
            let q = noise_free_state(&model, &plus_x_state(), outcome).unwrap();
            let (_, total_neg) = q.negativity();
            assert!(total_neg < 1e-8, "outcome {outcome}: negativity {total_neg:.3e}");
        }
    }

    #[test]
    fn noise_free_rejects_negligible_outcome() {
        let model = spin_z_model(0.01).unwrap();
        let rho = DensityMatrix::from_pure(&crate::spinhalf::plus_z()).unwrap();
        assert!(matches!(
            noise_free_state(&model, &rho, -0.5),
            Err(QmeasError::NegligibleOutcome { .. })
        ));
    }

    #[test]
    fn information_average_recovers_initial_expectation() {
        // averaging <s_x> over p * rho_m gives back the initial value, while
        // averaging over p * rho_f gives the decohered one
        let model = spin_z_model(0.5).unwrap();
        let rho = plus_x_state();
        let grid = default_grid(&model);
        let sx = spin_x();

        let mut info_avg = 0.0;
        let mut final_avg = 0.0;
        for (&node, &weight) in grid.nodes().iter().zip(grid.weights()) {
            let w = weighted_information_matrix(&model, &rho, node);
            info_avg += weight * expectation(&w, &sx).unwrap().re;
            let pdf = outcome_pdf(&model, &rho, node);
            if pdf > PDF_FLOOR {
                let post = posterior(&model, &rho, node).unwrap();
                final_avg += weight * pdf * post.expect(&sx).unwrap();
            }
        }
        assert_abs_diff_eq!(info_avg, 0.5, epsilon = 1e-8);
        assert_abs_diff_eq!(final_avg, 0.5 * (-0.5f64).exp(), epsilon = 1e-8);
    }
}
