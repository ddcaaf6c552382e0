//! Seeded parameter grids for sweeps.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::params::ModelParameters;

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Number of points in the default sweep.
pub const DEFAULT_GRID_POINTS: usize = 100;

/// `count` points with `q, p ∈ [0.5, 2]` and `ν ∈ [−1, 1]`, reproducible
/// from `seed`.
pub fn parameter_grid(seed: u64, count: usize) -> Vec<ModelParameters> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qp = Uniform::new_inclusive(0.5, 2.0);
    let nu = Uniform::new_inclusive(-1.0, 1.0);
    (0..count)
        .map(|_| {
            let q = qp.sample(&mut rng);
            let p = qp.sample(&mut rng);
            let n = nu.sample(&mut rng);
            ModelParameters::new(q, p, n).expect("sampled parameters are valid")
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
