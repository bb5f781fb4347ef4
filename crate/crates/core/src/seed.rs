//! Deterministic seed derivation.
//!
//! Trial `i` of a benchmark uses `derive_seed(base, i)`, and the two ant
//! groups of a trial use `derive_seed(trial_seed, 0)` and
//! `derive_seed(trial_seed, 1)`. Both steps use SplitMix64 finalization, so
//! adding trials never changes the seeds of earlier ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The random stream used by every engine.
pub type EngineRng = ChaCha8Rng;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base) ^ index)
}

pub fn rng_from_seed(seed: u64) -> EngineRng {
    ChaCha8Rng::seed_from_u64(seed)
}
