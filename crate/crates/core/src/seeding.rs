//! Deterministic seed splitting.
//!
//! Every random stream in a run is derived from a single master seed by
//! folding a path of integers (grid point, iteration, purpose, item index)
//! through the SplitMix64 finalizer. A stream's seed depends only on its
//! path, never on scheduling, so parallel and sequential executions agree.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for every stochastic routine in the crate.
pub type ModelRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the stream addressed by `path` under `master`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix(master.wrapping_add(GOLDEN)), |acc, &p| {
        splitmix(acc ^ splitmix(p.wrapping_add(GOLDEN)))
    })
}

pub fn rng_from_seed(seed: u64) -> ModelRng {
    ModelRng::seed_from_u64(seed)
}

/// Stream labels used as the last element of a seed path.
pub mod stream {
    pub const GRAPH: u64 = 1;
    pub const OPINIONS: u64 = 2;
    pub const LABELS: u64 = 3;
    pub const FIRST_SHARERS: u64 = 4;
    pub const FITNESS: u64 = 5;
    pub const CASCADES: u64 = 6;
}
