use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::seeds::SeededRng;

const SUM_TOLERANCE: f64 = 1e-9;

/// Probabilities over the `2^register_len` outcomes of a measured register.
///
/// Outcome labels follow the basis-index convention: bit 0 of an outcome is
/// the register's most significant qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    register_len: usize,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Validates a probability vector: length `2^register_len`, entries in
    /// [0, 1] (rounding noise below 1e-12 is clamped to zero), total within
    /// 1e-9 of 1.
    pub fn new(register_len: usize, probs: Vec<f64>) -> Result<OutcomeDistribution, Error> {
        if register_len == 0 || register_len >= usize::BITS as usize {
            return Err(Error::InvalidDistribution);
        }
        if probs.len() != 1usize << register_len {
            return Err(Error::InvalidDistribution);
        }
        let mut probs = probs;
        let mut total = 0.0;
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -1e-12 || *p > 1.0 + 1e-9 {
                return Err(Error::InvalidDistribution);
            }
            if *p < 0.0 {
                *p = 0.0;
            }
            total += *p;
        }
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized { total });
        }
        Ok(OutcomeDistribution { register_len, probs })
    }

    /// All probability on a single outcome.
    pub fn point_mass(register_len: usize, outcome: usize) -> Result<OutcomeDistribution, Error> {
        if register_len == 0 || register_len >= usize::BITS as usize {
            return Err(Error::InvalidDistribution);
        }
        let dimension = 1usize << register_len;
        if outcome >= dimension {
            return Err(Error::BasisIndexOutOfRange {
                index: outcome,
                dimension,
            });
        }
        let mut probs = vec![0.0; dimension];
        probs[outcome] = 1.0;
        Ok(OutcomeDistribution { register_len, probs })
    }

    pub fn register_len(&self) -> usize {
        self.register_len
    }

    pub fn num_outcomes(&self) -> usize {
        self.probs.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of one outcome. Panics if `outcome` is out of range.
    pub fn probability(&self, outcome: usize) -> f64 {
        self.probs[outcome]
    }

    /// Probability that the register's most significant qubit reads 1, i.e.
    /// that the outcome lands in the upper half of the range.
    pub fn first_bit_probability(&self) -> f64 {
        let half = self.probs.len() / 2;
        self.probs[half..].iter().sum()
    }

    /// Draws `count` outcomes from the stream seeded by `seed`.
    pub fn sample(&self, seed: u64, count: usize) -> Vec<usize> {
        let mut rng = SeededRng::new(seed);
        self.sample_with(&mut rng, count)
    }

    /// Draws `count` outcomes by inverse transform on the running total.
    pub fn sample_with(&self, rng: &mut SeededRng, count: usize) -> Vec<usize> {
        let mut cumulative = Vec::with_capacity(self.probs.len());
        let mut acc = 0.0;
        for &p in &self.probs {
            acc += p;
            cumulative.push(acc);
        }
        (0..count)
            .map(|_| {
                let u = rng.unit_f64() * acc;
                let idx = cumulative.partition_point(|&c| c <= u);
                idx.min(self.probs.len() - 1)
            })
            .collect()
    }
}
