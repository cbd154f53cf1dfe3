//! Seeded random points with integer coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{rat, Rational};

pub type Sampler = ChaCha8Rng;

pub fn seeded(seed: u64) -> Sampler {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer coordinates drawn uniformly from `[-bound, bound]`.
pub fn random_point(rng: &mut Sampler, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

pub fn random_int(rng: &mut Sampler, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}
