//! Seeded random integer vectors, coordinates uniform in `[-9, 9]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rat, Vector};

pub const COORDINATE_BOUND: i64 = 9;

/// A deterministic stream of sample vectors.
pub struct Sampler {
    rng: ChaCha8Rng,
    dim: usize,
}

impl Sampler {
    pub fn new(seed: u64, dim: usize) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dim,
        }
    }

    pub fn next_i64(&mut self) -> Vec<i64> {
        (0..self.dim)
            .map(|_| self.rng.random_range(-COORDINATE_BOUND..=COORDINATE_BOUND))
            .collect()
    }

    pub fn next_vector(&mut self) -> Vector {
        self.next_i64().into_iter().map(rat).collect()
    }

    pub fn take(&mut self, count: usize) -> Vec<Vector> {
        (0..count).map(|_| self.next_vector()).collect()
    }

    /// An integer in `[lo, hi]` from the same stream.
    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }
}
