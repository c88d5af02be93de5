//! Reproducible random streams.
//!
//! All sampling uses ChaCha8 seeded from a 64-bit value. Stream `i` of a run
//! with seed `s` is seeded with `s ^ mix(i)` where `mix` is the SplitMix64
//! finalizer, so parallel workers never share a stream and results do not
//! depend on how many threads consume them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// SplitMix64 output function.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator for stream `stream` of a run seeded with `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed ^ mix(stream))
}
