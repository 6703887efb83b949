//! Deterministic, labelled random streams.
//!
//! Every stochastic element of a match (deals, pools, serves, termination
//! draws, fallback picks) comes from a stream derived here, so a match is
//! fully determined by its seed and the agents' replies.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ArenaRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `base_seed` and `labels` into a single 64-bit key.
pub fn derive_seed(base_seed: u64, labels: &[u64]) -> u64 {
    let mut state = base_seed;
    let mut acc = splitmix64(&mut state);
    for (i, &label) in labels.iter().enumerate() {
        let mut s = acc ^ label.wrapping_mul(GOLDEN).rotate_left((i % 63) as u32 + 1);
        acc = splitmix64(&mut s) ^ (labels.len() as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93);
    }
    acc
}

/// Returns a ChaCha8 stream keyed by `(base_seed, labels)`.
///
/// ChaCha8 output is specified bit-for-bit, so streams agree across
/// platforms and runs.
pub fn derive_rng(base_seed: u64, labels: &[u64]) -> ArenaRng {
    let mut state = derive_seed(base_seed, labels);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}
