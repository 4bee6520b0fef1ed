//! Counter-based seeding: each (seed, stream index) pair yields an independent,
//! reproducible ChaCha8 stream. Replicate i of a Monte Carlo run always sees
//! stream (seed, i) no matter how replicates are scheduled across threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent RNG stream for a given master seed and stream index.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut state = seed ^ index.wrapping_mul(0xa076_1d64_78bd_642f);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform double in [0, 1) with 53 random bits.
#[inline]
pub fn uniform_f64<R: Rng>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in [0, bound) without modulo bias.
pub fn uniform_below<R: Rng>(rng: &mut R, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let raw = rng.next_u64();
        let wide = (raw as u128).wrapping_mul(bound as u128);
        if (wide as u64) >= threshold {
            return (wide >> 64) as u64;
        }
    }
}
