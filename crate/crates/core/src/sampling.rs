//! Random physical Bell-diagonal states for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::state::{bell_from_eigenvalues, BellCoefficients};

/// Bell-basis weights drawn uniformly from the probability simplex.
pub fn random_bell_coefficients<R: Rng + ?Sized>(rng: &mut R) -> BellCoefficients {
    let draws: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let total: f64 = draws.iter().sum();
    bell_from_eigenvalues(draws.map(|d| d / total))
}

/// `n` states from a ChaCha8 stream seeded with `seed`.
pub fn seeded_bell_coefficients(n: usize, seed: u64) -> Vec<BellCoefficients> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_bell_coefficients(&mut rng)).collect()
}
