//! Seeded sampling of "general" points and jets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{rat, Rational, Vector};

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Entries of sampled points and jet coefficients lie in `[-HEIGHT, HEIGHT]`.
pub const HEIGHT: i64 = 5;

/// Default number of independent draws for max-rank genericity.
pub const DEFAULT_SAMPLES: usize = 5;

/// Deterministic source of small-height rational samples.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream derived from `seed` and a label, so that separate
    /// checks of one analysis do not share draws.
    pub fn derived(seed: u64, stream: u64) -> Self {
        let mut s = Self::new(seed);
        s.rng.set_stream(stream);
        s
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn small(&mut self) -> Rational {
        rat(self.int(-HEIGHT, HEIGHT))
    }

    pub fn point(&mut self, n: usize) -> Vector {
        (0..n).map(|_| self.small()).collect()
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vector {
        loop {
            let v = self.point(n);
            if !crate::exactlin::is_zero_vector(&v) {
                return v;
            }
        }
    }

    pub fn nonzero_small(&mut self) -> Rational {
        loop {
            let x = self.int(-HEIGHT, HEIGHT);
            if x != 0 {
                return rat(x);
            }
        }
    }
}
