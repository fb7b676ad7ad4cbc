//! Counter-based seeded random streams.
//!
//! A stream is identified by `(seed, domain, a, b)`; the tuple is mixed into a
//! ChaCha8 seed. Any worker can open any stream independently, which is what
//! makes batch and graph generation reproducible at every parallelism level.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream domains. Distinct domains never share a stream even for equal counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    ErdosRenyi = 1,
    Init = 2,
    Gaussian = 3,
    Search = 4,
    Component = 5,
    Evolve = 6,
}

#[inline]
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a seed with a domain tag and two counters into a 64-bit key.
pub fn derive(seed: u64, domain: Domain, a: u64, b: u64) -> u64 {
    let mut h = splitmix(seed ^ 0x5EED_0000_0000_0000);
    h = splitmix(h ^ domain as u64);
    h = splitmix(h ^ a);
    splitmix(h ^ b.rotate_left(17))
}

pub fn stream(seed: u64, domain: Domain, a: u64, b: u64) -> StreamRng {
    let key = derive(seed, domain, a, b);
    let mut bytes = [0u8; 32];
    let mut k = key;
    for chunk in bytes.chunks_mut(8) {
        k = splitmix(k);
        chunk.copy_from_slice(&k.to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}
