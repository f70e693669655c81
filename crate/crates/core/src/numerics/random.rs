//! Seeded randomness.
//!
//! Every stream is a ChaCha8 generator keyed by a seed and selected by a
//! stream number, so draws for item `j` never depend on how other items were
//! scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{DenseOperator, DenseState, C64};

pub type Rng = ChaCha8Rng;

/// Generator for `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

pub fn ginibre(dim: usize, rng: &mut Rng) -> DenseOperator {
    DenseOperator::from_fn(dim, dim, |_, _| gaussian(rng))
}

pub fn haar_state(dim: usize, rng: &mut Rng) -> DenseState {
    let amps: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    DenseState::from_vec_unchecked(amps.into_iter().map(|a| a / norm).collect())
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase correction.
pub fn haar_unitary(dim: usize, rng: &mut Rng) -> DenseOperator {
    let qr = ginibre(dim, rng).into_matrix().qr();
    let (q, r) = (qr.q(), qr.r());
    let phases: Vec<C64> = (0..dim)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        })
        .collect();
    DenseOperator::from_fn(dim, dim, |a, b| q[(a, b)] * phases[b])
}

/// A full-rank random density operator.
pub fn random_density(dim: usize, rng: &mut Rng) -> DenseOperator {
    let g = ginibre(dim, rng);
    let w = g.mul(&g.dagger());
    let tr = w.trace().re;
    w.scale_real(1.0 / tr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = stream_rng(1, 0);
        for d in [1, 2, 5, 8] {
            assert!(haar_unitary(d, &mut rng).is_unitary(1e-12));
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = haar_state(4, &mut stream_rng(9, 3));
        let b = haar_state(4, &mut stream_rng(9, 3));
        let c = haar_state(4, &mut stream_rng(9, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_density_is_density() {
        let rho = random_density(6, &mut stream_rng(2, 0));
        assert!(rho.is_density());
        assert!(rho.hermitian_eigenvalues().unwrap()[0] > 0.0);
    }
}
