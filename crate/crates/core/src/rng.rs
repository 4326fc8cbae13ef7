//! Seeded randomness shared by the randomized suites.
//!
//! Every draw goes through ChaCha8 seeded with `seed_from_u64(seed)`:
//!
//! * `unit()` is `(next_u64() >> 11) * 2^-53`, uniform on `[0, 1)`;
//! * `index(n)` is `floor(unit() * n)`;
//! * `normal()` is Box-Muller on two consecutive `unit()` draws (cosine branch);
//! * `dyadic(bound, bits)` is `index(2 * bound * 2^bits + 1) / 2^bits - bound`.
//!
//! The mapping from `u64` words to values is spelled out here so that other
//! implementations can reproduce the same instances from the same seed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Derives an independent stream for sub-instance `index` of a suite.
    pub fn fork(seed: u64, index: u64) -> Self {
        Self::new(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn index(&mut self, n: usize) -> usize {
        ((self.unit() * n as f64) as usize).min(n.saturating_sub(1))
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Multiple of `2^-bits` in `[-bound, bound]`.
    pub fn dyadic(&mut self, bound: u32, bits: u32) -> f64 {
        let scale = (1u64 << bits) as f64;
        let steps = 2 * bound as usize * (1usize << bits) + 1;
        self.index(steps) as f64 / scale - bound as f64
    }

    /// Fisher-Yates shuffle of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.index(i + 1);
            p.swap(i, j);
        }
        p
    }
}
