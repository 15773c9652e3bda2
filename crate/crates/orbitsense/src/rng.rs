//! Seeded, language-portable randomness.
//!
//! All sampling in this crate draws from ChaCha8 streams keyed by a 64-bit
//! seed (`ChaCha8Rng::seed_from_u64`). Derived streams use the SplitMix64
//! finalizer: a trial with index parts `(a, b, ...)` under master seed `M`
//! uses `M ^ splitmix64(a) ^ splitmix64(splitmix64(b)) ^ ...`, so every
//! (grid cell, trial, role) triple gets an independent reproducible stream.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeded generator for a single stream.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream seed from a master seed and index parts.
///
/// Each part is mixed through an increasing number of SplitMix64 rounds so
/// that `derive_seed(m, &[a, b])` and `derive_seed(m, &[b, a])` differ.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut seed = master;
    for (depth, &part) in parts.iter().enumerate() {
        let mut h = part;
        for _ in 0..=depth {
            h = splitmix64(h);
        }
        seed ^= h;
    }
    seed
}
