use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::SampleBatch;
use crate::error::{Error, Result};
use crate::gaussian::GaussianTwoModeState;

/// Rows generated per RNG stream. Chunk `k` draws from ChaCha20 seeded with
/// `seed` on stream `k`, so a batch does not depend on the thread count.
pub const CHUNK_ROWS: usize = 1 << 16;

pub fn draw_samples(state: &GaussianTwoModeState, n: usize, seed: u64) -> Result<SampleBatch> {
    draw_samples_labeled(state, n, seed, "gaussian_state")
}

/// Draws `n` i.i.d. homodyne records `x = mean + L z`, with `L` the Cholesky
/// factor of the covariance and `z` standard normal.
pub fn draw_samples_labeled(
    state: &GaussianTwoModeState,
    n: usize,
    seed: u64,
    label: &str,
) -> Result<SampleBatch> {
    if n < 2 {
        return Err(Error::invalid(
            "n",
            n as f64,
            "at least 2 samples are required",
        ));
    }
    let chol = state.cov().cholesky().ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    let mean = *state.mean();

    let chunks = n.div_ceil(CHUNK_ROWS);
    let samples: Vec<[f64; 4]> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let rows = CHUNK_ROWS.min(n - k * CHUNK_ROWS);
            (0..rows)
                .map(|_| {
                    let z: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
                    std::array::from_fn(|i| {
                        mean[i] + (0..=i).map(|j| l[(i, j)] * z[j]).sum::<f64>()
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();

    SampleBatch::new(samples, seed, label)
}
