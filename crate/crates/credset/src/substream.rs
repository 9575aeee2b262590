//! Reproducible random substreams.
//!
//! Each (test, grid point, replication) tuple gets its own stream: the tuple
//! is folded into a 64-bit key with the splitmix64 finalizer and the key
//! seeds a ChaCha8 counter-mode generator. Streams are therefore independent
//! of evaluation order and safe to draw from in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 finalizer: a bijective 64-bit mixer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Fold a master seed and a tuple of stream coordinates into a stream key.
pub fn stream_key(seed: u64, parts: &[u64]) -> u64 {
    let mut h = mix64(seed.wrapping_add(GOLDEN_GAMMA));
    for (i, part) in parts.iter().enumerate() {
        let salt = GOLDEN_GAMMA.wrapping_mul(i as u64 + 2);
        h = mix64(h ^ part.wrapping_add(salt));
    }
    h
}

/// A dedicated generator for one stream coordinate tuple.
pub fn substream(seed: u64, parts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_key(seed, parts))
}
