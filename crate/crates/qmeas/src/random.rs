//! Seeded generators for random observables and states, used by property
//! sweeps and the verification command. Everything is deterministic given
//! the seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::engine::DensityMatrix;
use crate::linalg::{Complex64, ComplexMatrix, HermitianObservable, StateVector};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Random Hermitian matrix `(G + G^dagger) / 2`, scaled so the spectral span
/// stays of order one across dimensions.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    assert!(dim > 0);
    let scale = 1.0 / (dim as f64).sqrt();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let diag: f64 = rng.sample(StandardNormal);
        m.set(i, i, Complex64::new(diag * scale, 0.0));
        for j in (i + 1)..dim {
            let z = standard_complex(rng) * std::f64::consts::FRAC_1_SQRT_2 * scale;
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    m
}

pub fn random_observable(dim: usize, rng: &mut ChaCha8Rng) -> HermitianObservable {
    HermitianObservable::new(random_hermitian(dim, rng)).expect("Hermitian by construction")
}

/// Normalized Gaussian-entry state vector.
pub fn random_pure(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    assert!(dim > 0);
    loop {
        let entries: Vec<Complex64> = (0..dim).map(|_| standard_complex(rng)).collect();
        let v = StateVector::new(entries).expect("finite entries");
        if let Ok(normalized) = v.normalized() {
            return normalized;
        }
    }
}

/// Convex mixture of `components` random pure projectors.
pub fn random_mixed(dim: usize, components: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    assert!(dim > 0 && components > 0);
    let mut weights: Vec<f64> = (0..components).map(|_| rng.random::<f64>() + 0.05).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for &w in &weights {
        let projector = random_pure(dim, rng).projector();
        acc = acc.add(&projector.scale(Complex64::new(w, 0.0)));
    }
    DensityMatrix::new(acc).expect("convex mixture of projectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;

    #[test]
    fn generators_are_deterministic() {
        let a = random_hermitian(4, &mut seeded_rng(7));
        let b = random_hermitian(4, &mut seeded_rng(7));
        assert_eq!(a, b);
        let p = random_mixed(3, 2, &mut seeded_rng(11));
        let q = random_mixed(3, 2, &mut seeded_rng(11));
        assert_eq!(p.matrix(), q.matrix());
    }

    #[test]
    fn random_hermitian_is_hermitian() {
        for dim in 2..=8 {
            let m = random_hermitian(dim, &mut seeded_rng(dim as u64));
            assert!(m.hermitian_deviation() < 1e-15);
            assert!(eig_hermitian(&m).is_ok());
        }
    }

    #[test]
    fn random_pure_is_normalized() {
        let v = random_pure(5, &mut seeded_rng(3));
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_mixed_is_a_state() {
        let rho = random_mixed(4, 3, &mut seeded_rng(5));
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(rho.purity() <= 1.0 + 1e-12);
    }
}
