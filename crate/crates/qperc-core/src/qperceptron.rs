//! Quantum circuits that evaluate a perceptron through phase estimation.
//!
//! Two constructions share one read-out convention: a `tau`-qubit phase
//! register estimates `phi = h/(2n) + 1/2` and its most significant bit is
//! the activation.
//!
//! * **Variant A** keeps the weights classical. Each phase-register qubit `t`
//!   controls a diagonal rotation of power `p = 2^(tau-1-t)` on each input
//!   qubit, with the weight values baked into the rotation angles. Registers:
//!   `[phase | input]`.
//! * **Variant B** stores the weights in qubits too: each magnitude digit of
//!   a fixed-point weight occupies one qubit, plus one sign qubit per
//!   component. Rotations are then doubly controlled (phase qubit and digit
//!   qubit), compiled into the five-gate set, and the sign qubits act through
//!   a temporary XOR onto the input qubits. Registers:
//!   `[phase | input | digits | signs]`.
//!
//! Both circuits are diagonal-plus-Fourier: every non-phase register stays in
//! a computational basis state throughout, which is what makes the analytic
//! backend exact.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::Error;
use crate::perceptron::{
    quantize_weights, to_phase, InputVector, QuantizedWeights, WeightVector,
};
use crate::qpe::{analytic_distribution, build_inverse_qft, MAX_ANALYTIC_TAU};
use crate::seeds::derive;
use crate::sim::{Circuit, Gate, OutcomeDistribution, StateVector, MAX_QUBITS};

/// Seed-stream label for classifier calls issued during training.
const CLASSIFIER_STREAM_TAG: u64 = 0x5143_4c53;

/// Which circuit construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    A,
    B { delta: usize },
}

/// Whether to simulate gates or evaluate the closed-form outcome law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Analytic,
    GateLevel,
}

/// Parameters of one quantum perceptron evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub tau: usize,
    pub variant: Variant,
    pub backend: Backend,
    /// Measurement repetitions; must be odd so the majority vote cannot tie.
    pub shots: usize,
}

impl RunConfig {
    /// Total qubits a gate-level simulation of this configuration allocates.
    pub fn total_qubits(&self) -> usize {
        match self.variant {
            Variant::A => self.tau + self.n,
            Variant::B { delta } => self.tau + self.n + self.n * delta + self.n,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.n == 0 {
            return Err(Error::EmptyVector);
        }
        if self.shots == 0 || self.shots.is_multiple_of(2) {
            return Err(Error::ShotsNotOdd { shots: self.shots });
        }
        if let Variant::B { delta } = self.variant {
            if delta == 0 || delta > crate::perceptron::MAX_DELTA {
                return Err(Error::DeltaOutOfRange {
                    delta,
                    max: crate::perceptron::MAX_DELTA,
                });
            }
        }
        match self.backend {
            Backend::Analytic => {
                if self.tau == 0 || self.tau > MAX_QUBITS {
                    return Err(Error::TauOutOfRange {
                        tau: self.tau,
                        max: MAX_QUBITS,
                    });
                }
            }
            Backend::GateLevel => {
                if self.tau == 0 {
                    return Err(Error::TauOutOfRange {
                        tau: self.tau,
                        max: MAX_QUBITS,
                    });
                }
                let requested = self.total_qubits();
                if requested > MAX_QUBITS {
                    return Err(Error::QubitBudgetExceeded {
                        requested,
                        limit: MAX_QUBITS,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Distribution over the phase register plus the voted activation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub distribution: OutcomeDistribution,
    /// Majority vote of the measured activation bit across the shots.
    pub output: i8,
}

fn validate_tau_budget(tau: usize, extra_qubits: usize) -> Result<(), Error> {
    if tau == 0 {
        return Err(Error::TauOutOfRange {
            tau,
            max: MAX_QUBITS,
        });
    }
    let requested = tau + extra_qubits;
    if requested > MAX_QUBITS {
        return Err(Error::QubitBudgetExceeded {
            requested,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Pushes `H target`, controlled-Z, `H target`: a CNOT within the gate set.
fn push_cnot(circuit: &mut Circuit, control: usize, target: usize) -> Result<(), Error> {
    circuit.push(Gate::Hadamard { target })?;
    circuit.push(Gate::controlled_phase(control, target, 0.5))?;
    circuit.push(Gate::Hadamard { target })?;
    Ok(())
}

fn variant_a_circuit(w: &WeightVector, tau: usize) -> Result<Circuit, Error> {
    let n = w.dimension();
    let delta_phi = 1.0 / (2 * n) as f64;
    let mut circuit = Circuit::new(tau + n);
    for t in 0..tau {
        circuit.push(Gate::Hadamard { target: t })?;
    }
    for t in 0..tau {
        let p = (1u64 << (tau - 1 - t)) as f64;
        // Bias term: together these put e^{i pi p} on the |1> branch of
        // qubit t, shifting the encoded phase by p/2.
        circuit.push(Gate::GlobalPhase { turns: 0.25 * p })?;
        circuit.push(Gate::PhaseDiag {
            target: t,
            turns: 0.25 * p,
        })?;
        for (k, &wk) in w.entries().iter().enumerate() {
            let theta = wk * delta_phi * p;
            circuit.push(Gate::ControlledPhaseDiag {
                qubits: [t, tau + k],
                turns: [0.0, 0.0, -theta, theta],
            })?;
        }
    }
    for gate in build_inverse_qft(tau)?.gates() {
        circuit.push(*gate)?;
    }
    Ok(circuit)
}

/// Builds the classical-weight construction on `tau + n` qubits.
///
/// The gate list depends only on the weights; the input enters through the
/// initial basis state of the input register (see
/// [`InputVector::basis_index`]). `x` is taken for dimension checking.
pub fn build_variant_a(
    w: &WeightVector,
    x: &InputVector,
    tau: usize,
) -> Result<Circuit, Error> {
    if w.dimension() != x.dimension() {
        return Err(Error::DimensionMismatch {
            expected: w.dimension(),
            got: x.dimension(),
        });
    }
    validate_tau_budget(tau, w.dimension())?;
    variant_a_circuit(w, tau)
}

fn variant_b_circuit(n: usize, delta: usize, tau: usize) -> Result<Circuit, Error> {
    let delta_phi = 1.0 / (2 * n) as f64;
    let input_q = |k: usize| tau + k;
    let digit_q = |k: usize, m: usize| tau + n + k * delta + (m - 1);
    let sign_q = |k: usize| tau + n + n * delta + k;
    let mut circuit = Circuit::new(tau + n + n * delta + n);
    for t in 0..tau {
        circuit.push(Gate::Hadamard { target: t })?;
    }
    // Fold each sign qubit into its input qubit: input_k <- input_k XOR
    // sign_k, so one rotation direction per digit covers both signs.
    for k in 0..n {
        push_cnot(&mut circuit, sign_q(k), input_q(k))?;
    }
    for t in 0..tau {
        let p = (1u64 << (tau - 1 - t)) as f64;
        circuit.push(Gate::GlobalPhase { turns: 0.25 * p })?;
        circuit.push(Gate::PhaseDiag {
            target: t,
            turns: 0.25 * p,
        })?;
        for k in 0..n {
            for m in 1..=delta {
                // Phase contribution J * W * (2X - 1) * coeff, with J the
                // phase qubit, W the digit qubit, X the folded input qubit.
                // Compiled as three two-qubit diagonals conjugated by CNOTs.
                let coeff = p * delta_phi * 0.5f64.powi(m as i32);
                let half = 0.5 * coeff;
                let up = Gate::ControlledPhaseDiag {
                    qubits: [digit_q(k, m), input_q(k)],
                    turns: [0.0, 0.0, -half, half],
                };
                let down = Gate::ControlledPhaseDiag {
                    qubits: [digit_q(k, m), input_q(k)],
                    turns: [0.0, 0.0, half, -half],
                };
                circuit.push(up)?;
                push_cnot(&mut circuit, t, digit_q(k, m))?;
                circuit.push(down)?;
                push_cnot(&mut circuit, t, digit_q(k, m))?;
                circuit.push(Gate::ControlledPhaseDiag {
                    qubits: [t, input_q(k)],
                    turns: [0.0, 0.0, -half, half],
                })?;
            }
        }
    }
    for k in 0..n {
        push_cnot(&mut circuit, sign_q(k), input_q(k))?;
    }
    for gate in build_inverse_qft(tau)?.gates() {
        circuit.push(*gate)?;
    }
    Ok(circuit)
}

/// Builds the qubit-weight construction on `tau + n + n delta + n` qubits.
///
/// The gate list depends only on the dimensions, not on the stored values:
/// weights and input both enter through the initial basis state (see
/// [`variant_b_initial_index`]).
pub fn build_variant_b(
    qw: &QuantizedWeights,
    x: &InputVector,
    tau: usize,
) -> Result<Circuit, Error> {
    let n = qw.dimension();
    if n != x.dimension() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dimension(),
        });
    }
    validate_tau_budget(tau, n + n * qw.delta() + n)?;
    variant_b_circuit(n, qw.delta(), tau)
}

/// Initial basis index loading `x`, the weight digits, and the sign bits
/// behind a cleared phase register. Independent of `tau` because the phase
/// register occupies the most significant bits and starts at zero.
pub fn variant_b_initial_index(qw: &QuantizedWeights, x: &InputVector) -> usize {
    let mut index = x.basis_index();
    for k in 0..qw.dimension() {
        index = (index << qw.delta()) | qw.magnitude_code(k) as usize;
    }
    for k in 0..qw.dimension() {
        index = (index << 1) | usize::from(qw.sign_negative(k));
    }
    index
}

fn gate_level_distribution(
    config: &RunConfig,
    w: &WeightVector,
    x: &InputVector,
) -> Result<OutcomeDistribution, Error> {
    let (circuit, index) = match config.variant {
        Variant::A => (
            build_variant_a(w, x, config.tau)?,
            x.basis_index(),
        ),
        Variant::B { delta } => {
            let qw = quantize_weights(w, delta)?;
            let circuit = build_variant_b(&qw, x, config.tau)?;
            let index = variant_b_initial_index(&qw, x);
            (circuit, index)
        }
    };
    let mut state = StateVector::basis_state(circuit.num_qubits(), index)?;
    state.apply_circuit(&circuit)?;
    state.leading_register_distribution(config.tau)
}

fn analytic_distribution_for(
    config: &RunConfig,
    w: &WeightVector,
    x: &InputVector,
) -> Result<OutcomeDistribution, Error> {
    let phi = match config.variant {
        Variant::A => to_phase(w, x)?.phi,
        // The qubit construction evaluates the truncated weights, so the
        // closed form must too.
        Variant::B { delta } => {
            let reconstructed = quantize_weights(w, delta)?.reconstruct();
            to_phase(&reconstructed, x)?.phi
        }
    };
    analytic_distribution(phi, config.tau)
}

/// Evaluates the perceptron once: computes the phase-register distribution on
/// the chosen backend, samples `config.shots` outcomes from the stream seeded
/// by `seed`, and majority-votes the activation bit.
pub fn run(
    config: &RunConfig,
    w: &WeightVector,
    x: &InputVector,
    seed: u64,
) -> Result<RunOutcome, Error> {
    config.validate()?;
    if w.dimension() != config.n || x.dimension() != config.n {
        return Err(Error::DimensionMismatch {
            expected: config.n,
            got: if w.dimension() != config.n {
                w.dimension()
            } else {
                x.dimension()
            },
        });
    }
    let distribution = match config.backend {
        Backend::Analytic => analytic_distribution_for(config, w, x)?,
        Backend::GateLevel => gate_level_distribution(config, w, x)?,
    };
    let half = 1usize << (config.tau - 1);
    let ones = distribution
        .sample(seed, config.shots)
        .into_iter()
        .filter(|&j| j >= half)
        .count();
    let output = if 2 * ones > config.shots { 1 } else { -1 };
    Ok(RunOutcome {
        distribution,
        output,
    })
}

/// A classifier callback for [`crate::perceptron::train`] that reads the
/// activation from a sampled quantum evaluation. Each call derives a fresh
/// sampling seed from `master_seed` and a call counter, so repeated
/// evaluations of the same point stay independent.
pub fn quantum_classifier(
    config: RunConfig,
    master_seed: u64,
) -> impl FnMut(&WeightVector, &InputVector) -> Result<i8, Error> {
    let mut calls: u64 = 0;
    move |w, x| {
        let seed = derive(master_seed, &[CLASSIFIER_STREAM_TAG, calls]);
        calls += 1;
        Ok(run(&config, w, x, seed)?.output)
    }
}

/// One branch of a superposed evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionBranch {
    /// Basis index of this input pattern in the input register.
    pub input_index: usize,
    /// Probability of finding the input register in this pattern.
    pub marginal: f64,
    /// Phase-register distribution conditioned on this pattern.
    pub conditional: OutcomeDistribution,
}

/// Joint read-out of a superposed evaluation, one branch per input.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionRun {
    pub tau: usize,
    pub branches: Vec<SuperpositionBranch>,
}

impl SuperpositionRun {
    /// Probability of measuring phase outcome `j` together with input branch
    /// `i`.
    pub fn joint_probability(&self, i: usize, j: usize) -> f64 {
        self.branches[i].marginal * self.branches[i].conditional.probability(j)
    }
}

/// Runs the classical-weight circuit on a superposition of input patterns.
///
/// `amplitudes` defaults to uniform `1/sqrt(K)` over the `K` inputs; when
/// given, they must be one per input, none with squared magnitude below
/// 1e-12, totalling 1 within 1e-9. Because the circuit is diagonal on the
/// input register, each branch's conditional distribution equals the
/// single-input distribution for that pattern regardless of the amplitudes,
/// while the marginals return the amplitudes' squared magnitudes.
pub fn run_superposition(
    w: &WeightVector,
    inputs: &[InputVector],
    amplitudes: Option<&[Complex64]>,
    tau: usize,
) -> Result<SuperpositionRun, Error> {
    let n = w.dimension();
    if inputs.is_empty() {
        return Err(Error::EmptyVector);
    }
    for x in inputs {
        if x.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.dimension(),
            });
        }
    }
    for (index, x) in inputs.iter().enumerate() {
        if inputs[..index].iter().any(|seen| seen == x) {
            return Err(Error::DuplicateInput { index });
        }
    }
    validate_tau_budget(tau, n)?;
    let count = inputs.len();
    let amps: Vec<Complex64> = match amplitudes {
        Some(given) => {
            if given.len() != count {
                return Err(Error::AmplitudeCountMismatch {
                    expected: count,
                    got: given.len(),
                });
            }
            for (index, a) in given.iter().enumerate() {
                if a.norm_sqr() <= 1e-12 {
                    return Err(Error::ZeroAmplitude { index });
                }
            }
            let total: f64 = given.iter().map(|a| a.norm_sqr()).sum();
            if !total.is_finite() || (total - 1.0).abs() > 1e-9 {
                return Err(Error::NotNormalized { total });
            }
            given.to_vec()
        }
        None => {
            let a = 1.0 / (count as f64).sqrt();
            vec![Complex64::new(a, 0.0); count]
        }
    };
    let circuit = variant_a_circuit(w, tau)?;
    let dimension = 1usize << (tau + n);
    let mut initial = vec![Complex64::new(0.0, 0.0); dimension];
    for (x, a) in inputs.iter().zip(amps.iter()) {
        initial[x.basis_index()] = *a;
    }
    let mut state = StateVector::from_amplitudes(initial)?;
    state.apply_circuit(&circuit)?;
    let branches = inputs
        .iter()
        .map(|x| {
            let input_index = x.basis_index();
            let mut joint = Vec::with_capacity(1usize << tau);
            for j in 0..1usize << tau {
                joint.push(state.probability((j << n) | input_index));
            }
            let marginal: f64 = joint.iter().sum();
            let conditional_probs: Vec<f64> =
                joint.iter().map(|p| p / marginal).collect();
            let conditional = OutcomeDistribution::new(tau, conditional_probs)?;
            Ok(SuperpositionBranch {
                input_index,
                marginal,
                conditional,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(SuperpositionRun { tau, branches })
}

/// Gate totals for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateCountReport {
    /// Reference cost of the oracle cascade under the sequential-application
    /// model: `tau + (n+1) (2^tau - 1) 2^(tau-1)` elementary gates, counting
    /// `n+1` rotations per base-oracle application.
    pub oracle_formula_gates: u128,
    /// Reference cost of the inverse Fourier stage:
    /// `tau (tau+1) / 2 + floor(3 tau / 2)` elementary gates.
    pub inverse_qft_formula_gates: u64,
    /// Gates the builder here actually emits for the full circuit, which
    /// grows only linearly in `tau` for the cascade.
    pub constructed_gates: usize,
}

/// Computes both reference formulas and the constructed gate total for a
/// circuit of the given shape. Weight values do not affect counts, so none
/// are taken.
pub fn gate_count_report(
    n: usize,
    tau: usize,
    variant: &Variant,
) -> Result<GateCountReport, Error> {
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    if tau == 0 || tau > MAX_ANALYTIC_TAU {
        return Err(Error::TauOutOfRange {
            tau,
            max: MAX_ANALYTIC_TAU,
        });
    }
    let applications = ((1u128 << tau) - 1) << (tau - 1);
    let oracle_formula_gates = (n as u128 + 1)
        .checked_mul(applications)
        .and_then(|c| c.checked_add(tau as u128))
        .ok_or(Error::CountOverflow)?;
    let inverse_qft_formula_gates = (tau * (tau + 1) / 2 + 3 * tau / 2) as u64;
    let constructed = match *variant {
        Variant::A => {
            let w = WeightVector::zeros(n)?;
            variant_a_circuit(&w, tau)?.len()
        }
        Variant::B { delta } => {
            if delta == 0 || delta > crate::perceptron::MAX_DELTA {
                return Err(Error::DeltaOutOfRange {
                    delta,
                    max: crate::perceptron::MAX_DELTA,
                });
            }
            variant_b_circuit(n, delta, tau)?.len()
        }
    };
    Ok(GateCountReport {
        oracle_formula_gates,
        inverse_qft_formula_gates,
        constructed_gates: constructed,
    })
}
