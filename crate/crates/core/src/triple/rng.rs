//! Seeded random streams for sampled evidence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::lie::random_in;
use crate::linalg::{Scalar, Subspace};

/// An independent deterministic stream for `(seed, label)`.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(label.as_bytes()));
    rng
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// `count` nonzero random elements of `s` (empty if `s = 0`).
pub fn samples(s: &Subspace, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Scalar>> {
    if s.is_zero() {
        return Vec::new();
    }
    (0..count).map(|_| random_in(s, rng)).collect()
}
