//! Deterministic randomness.
//!
//! Every stochastic routine in the workspace takes a `u64` seed and derives an
//! independent stream from it. [`derive`] mixes a master seed with a list of
//! integer labels so that distinct labels yield uncorrelated child seeds while
//! identical labels always reproduce the same stream.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 64-bit finalizer with full avalanche; every input bit affects every output bit.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `master` and a list of stream labels.
///
/// The labels are folded in one at a time through [`mix64`], so `derive(s, &[a, b])`
/// and `derive(s, &[b, a])` disagree unless `a == b`.
pub fn derive(master: u64, labels: &[u64]) -> u64 {
    let mut state = mix64(master ^ 0xa076_1d64_78bd_642f);
    for &label in labels {
        state = mix64(state ^ mix64(label));
    }
    state
}

/// Seeded random stream used for weight draws, input draws, and measurement sampling.
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> SeededRng {
        SeededRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw from [0, 1) with 53 random bits.
    pub fn unit_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform draw from [-1, 1).
    ///
    /// Computed as `2 u - 1` from a [0, 1) draw; both operations are exact in
    /// binary floating point, so the result is an unbiased dyadic lattice.
    pub fn symmetric_f64(&mut self) -> f64 {
        2.0 * self.unit_f64() - 1.0
    }

    /// Equiprobable -1 or +1.
    pub fn sign(&mut self) -> i8 {
        if self.next_u64() & 1 == 1 {
            1
        } else {
            -1
        }
    }

    /// Uniform index in `0..bound`. `bound` must be nonzero.
    ///
    /// Fixed-point multiply; the bias is below 2^-40 for any bound this
    /// workspace uses, far under statistical resolution.
    pub fn index(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (((self.next_u64() as u128) * (bound as u128)) >> 64) as usize
    }
}
