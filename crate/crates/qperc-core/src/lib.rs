//! Simulation core for a phase-estimation perceptron.
//!
//! A perceptron's net input `h = sum_k w_k x_k` is folded into a phase
//! `phi = h / (2n) + 1/2` of a unitary, and phase estimation with a register
//! of `tau` qubits reads that phase back out. The most significant bit of the
//! estimate is 1 exactly when `phi >= 1/2`, so a single measured bit plays the
//! role of the step activation while the rest of the register resolves the
//! phase, and with it the input's distance from the decision boundary.
//!
//! The crate is `no_std` (with `alloc`) and splits into:
//! * [`sim`]: a dense statevector backend over a five-gate set,
//! * [`qpe`]: phase-estimation circuits and the closed-form outcome law,
//! * [`perceptron`]: the classical perceptron, phase encoding, weight
//!   quantization, and training,
//! * [`qperceptron`]: the two circuit constructions tying it all together,
//! * [`seeds`]: deterministic seed derivation and the workspace RNG.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod perceptron;
pub mod qpe;
pub mod qperceptron;
pub mod seeds;
pub mod sim;

pub use error::Error;
pub use num_complex;
pub use sim::{Circuit, Gate, OutcomeDistribution, StateVector, MAX_QUBITS};

pub type Result<T, E = Error> = core::result::Result<T, E>;
