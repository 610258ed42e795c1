//! Keyed random streams.
//!
//! Every random choice draws from a ChaCha stream whose key is derived from
//! the global seed plus a purpose string and the premise id, so results do
//! not depend on processing order or on which other transforms ran.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type KeyedRng = ChaCha8Rng;

pub fn keyed_rng(seed: u64, purpose: &str, key: &str) -> KeyedRng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((purpose.len() as u64).to_le_bytes());
    h.update(purpose.as_bytes());
    h.update(key.as_bytes());
    let digest = h.finalize();
    let mut bytes = [0u8; 32];
    bytes.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(bytes)
}
