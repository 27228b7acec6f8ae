//! Dense complex matrix algebra and Hermitian spectral decomposition.
//!
//! Everything is plain row-major `Vec<Complex64>` storage; dimensions at play
//! are single digits, so clarity wins over blocking or sparsity. All values
//! are immutable after construction and all operations are pure functions.

use num_complex::Complex;

use crate::error::{QmeasError, Result};

pub type Complex64 = Complex<f64>;

/// Entrywise tolerance below which a matrix is accepted as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Dense complex matrix, row-major. Entries are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries, rejecting shape mismatches and NaN/Inf.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(QmeasError::EmptyDimension);
        }
        if data.len() != rows * cols {
            return Err(QmeasError::ShapeMismatch { rows, cols, len: data.len() });
        }
        for (index, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(QmeasError::NonFiniteEntry { index });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        Self { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::ONE;
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_diag(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim, dim);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * dim + i] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        assert!(value.re.is_finite() && value.im.is_finite(), "non-finite entry");
        self.data[row * self.cols + col] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let data = self.data.iter().map(|a| a * factor).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.data[i * self.cols + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise `|M - M^dagger|`; requires a square matrix.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of non-square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = self.data[i * self.cols + j] - self.data[j * self.cols + i].conj();
                dev = dev.max(d.norm());
            }
        }
        dev
    }

    /// `(M + M^dagger) / 2`; clears round-off asymmetry before spectral calls.
    pub fn symmetrized(&self) -> Self {
        assert!(self.is_square(), "symmetrization of non-square matrix");
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let avg = (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5;
                out.data[i * n + j] = avg;
            }
        }
        out
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] =
                            a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim(), "dimension mismatch in matrix-vector product");
        let mut out = vec![Complex64::ZERO; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] += self.data[i * self.cols + j] * v.data[j];
            }
        }
        StateVector { data: out }
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::mul(self, rhs)
    }
}

/// Complex column vector; pure states live here before becoming projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    data: Vec<Complex64>,
}

impl StateVector {
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(QmeasError::EmptyDimension);
        }
        for (index, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(QmeasError::NonFiniteEntry { index });
            }
        }
        Ok(Self { data })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut data = vec![Complex64::ZERO; dim];
        data[index] = Complex64::ONE;
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(QmeasError::InvalidDensityMatrix("cannot normalize zero vector".into()));
        }
        let inv = Complex64::new(1.0 / n, 0.0);
        Ok(Self { data: self.data.iter().map(|z| z * inv).collect() })
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in inner product");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    /// Projector `|self><self|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.data[i] * self.data[j].conj();
            }
        }
        out
    }

    /// Tensor product `|self> (x) |other>`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self { data }
    }
}

/// Eigenvalues (ascending) and a unitary of eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, ordered as the eigenvalues.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U diag(lambda) U^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_fn(|x| x)
    }

    /// Operator function `U diag(f(lambda)) U^dagger`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let u = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..n {
                let uik = u.data[i * n + k] * fk;
                for j in 0..n {
                    out.data[i * n + j] += uik * u.data[j * n + k].conj();
                }
            }
        }
        out
    }

    /// Rotate a matrix into the eigenbasis: `U^dagger M U`.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let ud = self.eigenvectors.adjoint();
        ud.mul(m).mul(&self.eigenvectors)
    }

    /// Rotate a matrix back from the eigenbasis: `U M U^dagger`.
    pub fn from_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        self.eigenvectors.mul(m).mul(&self.eigenvectors.adjoint())
    }

    /// Coefficients of a vector in the eigenbasis: `U^dagger v`.
    pub fn coefficients(&self, v: &StateVector) -> StateVector {
        self.eigenvectors.adjoint().apply(v)
    }

    /// Max entrywise `|U^dagger U - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim();
        let gram = self.eigenvectors.adjoint().mul(&self.eigenvectors);
        gram.sub(&ComplexMatrix::identity(n)).max_abs()
    }
}

/// Hermitian matrix with its cached spectral decomposition.
#[derive(Debug, Clone)]
pub struct HermitianObservable {
    matrix: ComplexMatrix,
    spectrum: SpectralDecomposition,
}

impl HermitianObservable {
    /// Validates Hermiticity (tolerance [`HERMITICITY_TOL`]) and diagonalizes.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let spectrum = eig_hermitian(&matrix)?;
        Ok(Self { matrix, spectrum })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.spectrum.eigenvalues()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.spectrum.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Smallest gap between adjacent distinct eigenvalues; 0 if fully degenerate.
    pub fn min_eigenvalue_gap(&self) -> f64 {
        self.spectrum
            .eigenvalues
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|&g| g > 0.0)
            .fold(f64::INFINITY, f64::min)
            .min(f64::INFINITY)
    }
}

/// Operator function of an observable: `U diag(f(lambda)) U^dagger`.
///
/// The result is Hermitian for real `f` and commutes with the observable.
pub fn spectral_apply(f: impl Fn(f64) -> f64, obs: &HermitianObservable) -> ComplexMatrix {
    obs.spectrum().apply_fn(f)
}

/// Trace pairing `Tr{rho B}`. Real (to round-off) when both are Hermitian.
pub fn expectation(rho: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if !rho.is_square() || !b.is_square() || rho.rows() != b.rows() {
        return Err(QmeasError::DimensionMismatch {
            left_rows: rho.rows(),
            left_cols: rho.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let n = rho.rows();
    let mut sum = Complex64::ZERO;
    for i in 0..n {
        for k in 0..n {
            sum += rho.data[i * n + k] * b.data[k * n + i];
        }
    }
    Ok(sum)
}

/// Kronecker composition of two matrices (or vectors as 1-column matrices).
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Trace distance `(1/2) ||a - b||_1` between Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let diff = a.sub(b);
    let spectrum = eig_hermitian(&diff)?;
    Ok(0.5 * spectrum.eigenvalues().iter().map(|l| l.abs()).sum::<f64>())
}

/// Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized first; eigenvalues come back ascending and the
/// eigenvector unitary reconstructs the matrix to near machine precision.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(QmeasError::DimensionMismatch {
            left_rows: m.rows(),
            left_cols: m.cols(),
            right_rows: m.cols(),
            right_cols: m.rows(),
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(QmeasError::NonHermitianInput { deviation, tolerance: HERMITICITY_TOL });
    }

    let n = m.rows();
    let mut a = m.symmetrized();
    let mut v = ComplexMatrix::identity(n);
    let threshold = (n as f64) * f64::EPSILON * a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    debug_assert!(
        off_diagonal_norm(&a) <= threshold * 1e3,
        "jacobi iteration failed to converge"
    );

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.data[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors.data[row * n + new_col] = v.data[row * n + old_col];
        }
    }

    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a.data[p * n + q].norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry of `a`, accumulated into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a.data[p * n + q];
    let abs_b = apq.norm();
    let app = a.data[p * n + p].re;
    let aqq = a.data[q * n + q].re;

    // Entries negligible against the diagonal contribute below round-off.
    if abs_b <= 0.5 * f64::EPSILON * (app.abs() + aqq.abs()) {
        if abs_b > 0.0 {
            a.data[p * n + q] = Complex64::ZERO;
            a.data[q * n + p] = Complex64::ZERO;
        }
        return;
    }

    let phase = apq / abs_b;
    let tau = (aqq - app) / (2.0 * abs_b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let s_phase = phase * s;
    let s_phase_conj = phase.conj() * s;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a.data[k * n + p];
        let akq = a.data[k * n + q];
        let new_akp = akp * c - akq * s_phase_conj;
        let new_akq = akp * s_phase + akq * c;
        a.data[k * n + p] = new_akp;
        a.data[p * n + k] = new_akp.conj();
        a.data[k * n + q] = new_akq;
        a.data[q * n + k] = new_akq.conj();
    }
    a.data[p * n + p] = Complex64::new(app - t * abs_b, 0.0);
    a.data[q * n + q] = Complex64::new(aqq + t * abs_b, 0.0);
    a.data[p * n + q] = Complex64::ZERO;
    a.data[q * n + p] = Complex64::ZERO;

    for k in 0..n {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = vkp * c - vkq * s_phase_conj;
        v.data[k * n + q] = vkp * s_phase + vkq * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinhalf::{plus_x, spin_x, spin_z};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eig_spin_z_eigenvalues_ascend() {
        let spec = eig_hermitian(&spin_z()).unwrap();
        assert_abs_diff_eq!(spec.eigenvalues()[0], -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.eigenvalues()[1], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn eig_identity_matrix() {
        let spec = eig_hermitian(&ComplexMatrix::identity(3)).unwrap();
        for &l in spec.eigenvalues() {
            assert_abs_diff_eq!(l, 1.0, epsilon = 1e-14);
        }
        assert!(spec.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn eig_reconstruction_residual() {
        let m = fixed_hermitian_4();
        let spec = eig_hermitian(&m).unwrap();
        let residual = spec.reconstruct().sub(&m).frobenius_norm() / m.frobenius_norm();
        assert!(residual < 1e-12, "residual {residual:.3e}");
        assert!(spec.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(
            eig_hermitian(&m),
            Err(QmeasError::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn spectral_apply_identity_function() {
        let obs = HermitianObservable::new(spin_z()).unwrap();
        let back = spectral_apply(|x| x, &obs);
        assert!(back.sub(&spin_z()).max_abs() < 1e-14);
    }

    #[test]
    fn spectral_apply_square_on_spin_z() {
        let obs = HermitianObservable::new(spin_z()).unwrap();
        let sq = spectral_apply(|x| x * x, &obs);
        let expected = ComplexMatrix::identity(2).scale(c(0.25, 0.0));
        assert!(sq.sub(&expected).max_abs() < 1e-14);
    }

    #[test]
    fn spectral_apply_exp_on_diagonal() {
        let m = ComplexMatrix::from_diag(&[0.0, 2.0f64.ln()]);
        let obs = HermitianObservable::new(m).unwrap();
        let e = spectral_apply(|x| (-x).exp(), &obs);
        assert_abs_diff_eq!(e.get(0, 0).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.get(1, 1).re, 0.5, epsilon = 1e-14);
        assert!(e.get(0, 1).norm() < 1e-14);
    }

    #[test]
    fn spectral_apply_commutes_with_observable() {
        let obs = HermitianObservable::new(fixed_hermitian_4()).unwrap();
        let f = spectral_apply(|x| (-(x - 0.3).powi(2)).exp(), &obs);
        let comm = f.mul(obs.matrix()).sub(&obs.matrix().mul(&f));
        assert!(comm.max_abs() < 1e-12);
    }

    #[test]
    fn expectation_plus_x_examples() {
        let rho = plus_x().projector();
        assert_abs_diff_eq!(expectation(&rho, &spin_x()).unwrap().re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(expectation(&rho, &spin_z()).unwrap().re, 0.0, epsilon = 1e-12);
        let one = expectation(&rho, &ComplexMatrix::identity(2)).unwrap();
        assert_abs_diff_eq!(one.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(one.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn expectation_dimension_mismatch() {
        let rho = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(
            expectation(&rho, &b),
            Err(QmeasError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tensor_product_examples() {
        let id6 = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
        assert!(id6.sub(&ComplexMatrix::identity(6)).max_abs() < 1e-15);

        let sz_i = tensor_product(&spin_z(), &ComplexMatrix::identity(2));
        let expected = ComplexMatrix::from_diag(&[0.5, 0.5, -0.5, -0.5]);
        assert!(sz_i.sub(&expected).max_abs() < 1e-15);

        let a = StateVector::new(vec![c(1.0, 0.0), c(0.0, 2.0)]).unwrap();
        let b = StateVector::new(vec![c(3.0, 0.0), c(0.0, -1.0)]).unwrap();
        let joint = a.tensor(&b);
        assert_eq!(joint.data()[1], c(1.0, 0.0) * c(0.0, -1.0));
        assert_eq!(joint.data()[2], c(0.0, 2.0) * c(3.0, 0.0));
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]),
            Err(QmeasError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(QmeasError::NonFiniteEntry { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(0, 1, vec![]),
            Err(QmeasError::EmptyDimension)
        ));
    }

    #[test]
    fn trace_distance_of_orthogonal_projectors() {
        let a = StateVector::basis_state(2, 0).projector();
        let b = StateVector::basis_state(2, 1).projector();
        assert_abs_diff_eq!(trace_distance(&a, &b).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trace_distance(&a, &a).unwrap(), 0.0, epsilon = 1e-12);
    }

    /// Fixed dense 4x4 Hermitian test matrix.
    pub(crate) fn fixed_hermitian_4() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        let diag = [0.7, -1.3, 2.1, 0.2];
        let upper = [
            ((0, 1), c(0.4, -0.9)),
            ((0, 2), c(-0.3, 0.25)),
            ((0, 3), c(0.0, 1.1)),
            ((1, 2), c(0.8, 0.05)),
            ((1, 3), c(-0.6, -0.4)),
            ((2, 3), c(0.15, 0.7)),
        ];
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, c(d, 0.0));
        }
        for &((i, j), z) in &upper {
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
        m
    }
}
