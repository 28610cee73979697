//! The classical perceptron and its phase encoding.
//!
//! Inputs are sign vectors in {-1, +1}^n, weights live in [-1, 1)^n, and the
//! activation is the step rule `sign(h)` on the net input `h = sum_k w_k x_k`
//! with ties going to +1. The map [`to_phase`] rescales `h` into a phase
//! `phi = h / (2n) + 1/2` in [0, 1); thresholding `phi` at 1/2 is the same
//! decision as thresholding `h` at 0, which is what lets a phase register
//! stand in for the activation.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::seeds::SeededRng;

/// Upper clamp for trained weights: the largest value strictly below 1 on a
/// 2^-31 lattice, so repeated updates can never escape [-1, 1).
pub const WEIGHT_MAX: f64 = 1.0 - 1.0 / (1u64 << 31) as f64;

/// Largest supported weight precision; keeps `2^delta` exact in `f64`.
pub const MAX_DELTA: usize = 52;

/// Largest `f64` strictly below 1, the ceiling of the phase clamp.
const PHI_BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// A sign vector in {-1, +1}^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputVector {
    entries: Vec<i8>,
}

impl InputVector {
    pub fn new(entries: Vec<i8>) -> Result<InputVector, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &e) in entries.iter().enumerate() {
            if e != 1 && e != -1 {
                return Err(Error::InputNotSign { index });
            }
        }
        Ok(InputVector { entries })
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Qubit form of entry `k`: +1 reads as bit 1, -1 as bit 0.
    pub fn bit(&self, k: usize) -> bool {
        self.entries[k] == 1
    }

    /// The n-bit basis index with entry 0 as the most significant bit.
    pub fn basis_index(&self) -> usize {
        self.entries
            .iter()
            .fold(0usize, |acc, &e| (acc << 1) | usize::from(e == 1))
    }

    pub fn negated(&self) -> InputVector {
        InputVector {
            entries: self.entries.iter().map(|&e| -e).collect(),
        }
    }
}

/// A weight vector in [-1, 1)^n.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    entries: Vec<f64>,
}

impl WeightVector {
    pub fn new(entries: Vec<f64>) -> Result<WeightVector, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &w) in entries.iter().enumerate() {
            if !w.is_finite() || !(-1.0..1.0).contains(&w) {
                return Err(Error::WeightOutOfRange { index });
            }
        }
        Ok(WeightVector { entries })
    }

    pub fn zeros(n: usize) -> Result<WeightVector, Error> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(WeightVector {
            entries: alloc::vec![0.0; n],
        })
    }

    /// Independent uniform draws from [-1, 1).
    pub fn random(n: usize, rng: &mut SeededRng) -> Result<WeightVector, Error> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(WeightVector {
            entries: (0..n).map(|_| rng.symmetric_f64()).collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

fn check_dims(w: &WeightVector, x: &InputVector) -> Result<usize, Error> {
    if w.dimension() != x.dimension() {
        return Err(Error::DimensionMismatch {
            expected: w.dimension(),
            got: x.dimension(),
        });
    }
    Ok(w.dimension())
}

/// Net input `h = sum_k w_k x_k`.
pub fn net_input(w: &WeightVector, x: &InputVector) -> Result<f64, Error> {
    check_dims(w, x)?;
    Ok(w
        .entries
        .iter()
        .zip(x.entries.iter())
        .map(|(&wk, &xk)| if xk == 1 { wk } else { -wk })
        .sum())
}

/// Step activation: +1 when the net input is at least 0, else -1.
pub fn classical_activation(w: &WeightVector, x: &InputVector) -> Result<i8, Error> {
    Ok(if net_input(w, x)? >= 0.0 { 1 } else { -1 })
}

/// A net input rescaled into phase form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub net_input: f64,
    /// Phase step per unit of net input: `1 / (2n)`.
    pub delta_phi: f64,
    /// `net_input * delta_phi + 1/2`, clamped into [0, 1).
    pub phi: f64,
}

/// Encodes the net input of `(w, x)` as a phase in [0, 1).
///
/// Mathematically `h` stays inside `(-n, n)` for weights in [-1, 1), so `phi`
/// stays inside (0, 1); the clamp only absorbs rounding at the two ends, where
/// a product can land exactly on 1 or just below 0. Clamping (rather than
/// wrapping) keeps the postcondition that `phi >= 1/2` iff `h >= 0`.
pub fn to_phase(w: &WeightVector, x: &InputVector) -> Result<Phase, Error> {
    let n = check_dims(w, x)?;
    let h = net_input(w, x)?;
    let delta_phi = 1.0 / (2 * n) as f64;
    let mut phi = h * delta_phi + 0.5;
    if phi >= 1.0 {
        phi = PHI_BELOW_ONE;
    } else if phi < 0.0 {
        phi = 0.0;
    }
    Ok(Phase {
        net_input: h,
        delta_phi,
        phi,
    })
}

/// Fixed-point form of a weight vector: per component a sign flag and `delta`
/// binary fraction digits of the magnitude, truncated toward zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedWeights {
    delta: usize,
    /// Component-major: digit `m` of component `k` sits at `k * delta + m - 1`.
    digits: Vec<bool>,
    /// True marks a negative component. Zero quantizes as positive.
    signs: Vec<bool>,
}

impl QuantizedWeights {
    pub fn dimension(&self) -> usize {
        self.signs.len()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Digit `m` of component `k`, with `m` in `1..=delta` carrying weight
    /// `2^-m`.
    pub fn digit(&self, k: usize, m: usize) -> bool {
        debug_assert!((1..=self.delta).contains(&m));
        self.digits[k * self.delta + (m - 1)]
    }

    pub fn sign_negative(&self, k: usize) -> bool {
        self.signs[k]
    }

    /// The magnitude digits of component `k` packed as an integer in
    /// `0..2^delta`, most significant digit first.
    pub fn magnitude_code(&self, k: usize) -> u64 {
        (1..=self.delta).fold(0u64, |acc, m| (acc << 1) | u64::from(self.digit(k, m)))
    }

    /// The weight vector these digits encode exactly.
    pub fn reconstruct(&self) -> WeightVector {
        let scale = (1u64 << self.delta) as f64;
        let entries = (0..self.dimension())
            .map(|k| {
                let mag = self.magnitude_code(k) as f64 / scale;
                if self.signs[k] {
                    -mag
                } else {
                    mag
                }
            })
            .collect();
        WeightVector { entries }
    }
}

/// Truncates each weight to `delta` binary fraction digits plus a sign.
///
/// The magnitude code is `min(floor(|w| 2^delta), 2^delta - 1)`; the clamp
/// covers `w = -1`, and the reconstruction error stays within `2^-delta`
/// per component.
pub fn quantize_weights(w: &WeightVector, delta: usize) -> Result<QuantizedWeights, Error> {
    if delta == 0 || delta > MAX_DELTA {
        return Err(Error::DeltaOutOfRange {
            delta,
            max: MAX_DELTA,
        });
    }
    let scale = (1u64 << delta) as f64;
    let cap = (1u64 << delta) - 1;
    let mut digits = Vec::with_capacity(w.dimension() * delta);
    let mut signs = Vec::with_capacity(w.dimension());
    for &wk in w.entries() {
        let code = ((wk.abs() * scale).floor() as u64).min(cap);
        for m in 1..=delta {
            digits.push((code >> (delta - m)) & 1 == 1);
        }
        signs.push(wk < 0.0);
    }
    Ok(QuantizedWeights {
        delta,
        digits,
        signs,
    })
}

/// A supervised set of sign-vector inputs with {-1, +1} targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingSet {
    inputs: Vec<InputVector>,
    targets: Vec<i8>,
}

impl TrainingSet {
    pub fn new(inputs: Vec<InputVector>, targets: Vec<i8>) -> Result<TrainingSet, Error> {
        if inputs.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        if inputs.len() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: inputs.len(),
                got: targets.len(),
            });
        }
        let dimension = inputs[0].dimension();
        for input in &inputs {
            if input.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: input.dimension(),
                });
            }
        }
        for (index, &t) in targets.iter().enumerate() {
            if t != 1 && t != -1 {
                return Err(Error::TargetNotSign { index });
            }
        }
        Ok(TrainingSet { inputs, targets })
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.inputs[0].dimension()
    }

    pub fn input(&self, p: usize) -> &InputVector {
        &self.inputs[p]
    }

    pub fn target(&self, p: usize) -> i8 {
        self.targets[p]
    }

    pub fn examples(&self) -> impl Iterator<Item = (&InputVector, i8)> {
        self.inputs.iter().zip(self.targets.iter().copied())
    }
}

pub fn validate_eta(eta: f64) -> Result<(), Error> {
    if eta.is_finite() && (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::EtaOutOfRange { eta })
    }
}

fn validate_sign_value(v: i8, err: Error) -> Result<(), Error> {
    if v == 1 || v == -1 {
        Ok(())
    } else {
        Err(err)
    }
}

/// One perceptron update: `w_k <- w_k + eta (d - y) x_k`, clamped into
/// `[-1, WEIGHT_MAX]`. A correct prediction (`d == y`) leaves `w` unchanged.
pub fn training_step(
    w: &WeightVector,
    x: &InputVector,
    target: i8,
    predicted: i8,
    eta: f64,
) -> Result<WeightVector, Error> {
    check_dims(w, x)?;
    validate_eta(eta)?;
    validate_sign_value(target, Error::TargetNotSign { index: 0 })?;
    validate_sign_value(predicted, Error::ClassifierOutputNotSign)?;
    let factor = eta * f64::from(target - predicted);
    let entries = w
        .entries
        .iter()
        .zip(x.entries.iter())
        .map(|(&wk, &xk)| {
            let step = if xk == 1 { factor } else { -factor };
            (wk + step).clamp(-1.0, WEIGHT_MAX)
        })
        .collect();
    Ok(WeightVector { entries })
}

/// Result of a training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingOutcome {
    pub weights: WeightVector,
    /// Completed update epochs. Zero when the initial weights already
    /// classify the whole set.
    pub epochs_used: usize,
    /// Fraction of the set the final weights classify correctly.
    pub accuracy: f64,
}

/// Trains by sampled perceptron updates until the classifier is correct on
/// the whole set or `max_epochs` update epochs have run.
///
/// Each epoch first sweeps the set to check convergence, then performs
/// `set.len()` updates on examples drawn uniformly with replacement from the
/// stream seeded by `seed`. The classifier is a callback so the same loop
/// trains against the closed-form rule or a sampled quantum readout.
pub fn train<F>(
    set: &TrainingSet,
    initial: &WeightVector,
    eta: f64,
    max_epochs: usize,
    mut classifier: F,
    seed: u64,
) -> Result<TrainingOutcome, Error>
where
    F: FnMut(&WeightVector, &InputVector) -> Result<i8, Error>,
{
    if initial.dimension() != set.dimension() {
        return Err(Error::DimensionMismatch {
            expected: set.dimension(),
            got: initial.dimension(),
        });
    }
    validate_eta(eta)?;
    let mut rng = SeededRng::new(seed);
    let count = set.len();
    let mut w = initial.clone();
    for epoch in 0..=max_epochs {
        let mut correct = 0usize;
        for (x, d) in set.examples() {
            let y = classifier(&w, x)?;
            validate_sign_value(y, Error::ClassifierOutputNotSign)?;
            if y == d {
                correct += 1;
            }
        }
        if correct == count {
            return Ok(TrainingOutcome {
                weights: w,
                epochs_used: epoch,
                accuracy: 1.0,
            });
        }
        if epoch == max_epochs {
            return Ok(TrainingOutcome {
                weights: w,
                epochs_used: max_epochs,
                accuracy: correct as f64 / count as f64,
            });
        }
        for _ in 0..count {
            let p = rng.index(count);
            let x = set.input(p);
            let y = classifier(&w, x)?;
            validate_sign_value(y, Error::ClassifierOutputNotSign)?;
            w = training_step(&w, x, set.target(p), y, eta)?;
        }
    }
    unreachable!("loop returns at epoch == max_epochs");
}
