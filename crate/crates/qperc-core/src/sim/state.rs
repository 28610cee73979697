use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::Error;
use crate::sim::{Circuit, Gate, OutcomeDistribution};

/// Largest qubit count the dense backend will allocate (128 MiB of amplitudes).
pub const MAX_QUBITS: usize = 24;

const NORM_TOLERANCE: f64 = 1e-9;

/// e^{2 pi i turns}. Reduces to [0, 1) first so large multiples of a turn
/// lose no precision in the trig argument.
fn phase_factor(turns: f64) -> Complex64 {
    let t = turns - turns.floor();
    Complex64::from_polar(1.0, TAU * t)
}

/// Dense complex amplitudes over `2^num_qubits` basis states.
///
/// Qubit 0 is the most significant bit of a basis index: on `n` qubits, qubit
/// `q` of basis state `i` is `(i >> (n - 1 - q)) & 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The basis state `|index>` on `num_qubits` qubits.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<StateVector, Error> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::QubitBudgetExceeded {
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        let dimension = 1usize << num_qubits;
        if index >= dimension {
            return Err(Error::BasisIndexOutOfRange { index, dimension });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dimension];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Wraps an amplitude vector. The length must be a power of two within the
    /// qubit budget and the squared magnitudes must sum to 1 within 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector, Error> {
        let dimension = amps.len();
        if dimension == 0 || !dimension.is_power_of_two() {
            return Err(Error::AmplitudeLengthNotPowerOfTwo { len: dimension });
        }
        let num_qubits = dimension.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::QubitBudgetExceeded {
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !total.is_finite() || (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { total });
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dimension(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Squared magnitude of one amplitude. Panics if `index` is out of range.
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, qubit: usize) -> usize {
        1usize << (self.num_qubits - 1 - qubit)
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), Error> {
        gate.validate(self.num_qubits)?;
        match *gate {
            Gate::Hadamard { target } => {
                let m = self.mask(target);
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        let j = i | m;
                        let a = self.amps[i];
                        let b = self.amps[j];
                        self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amps[j] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::PhaseDiag { target, turns } => {
                let m = self.mask(target);
                let factors = [phase_factor(-turns), phase_factor(turns)];
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    *amp *= factors[usize::from(i & m != 0)];
                }
            }
            Gate::ControlledPhaseDiag { qubits, turns } => {
                let m0 = self.mask(qubits[0]);
                let m1 = self.mask(qubits[1]);
                let factors = [
                    phase_factor(turns[0]),
                    phase_factor(turns[1]),
                    phase_factor(turns[2]),
                    phase_factor(turns[3]),
                ];
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    let sel = (usize::from(i & m0 != 0) << 1) | usize::from(i & m1 != 0);
                    *amp *= factors[sel];
                }
            }
            Gate::Swap { qubits } => {
                let ma = self.mask(qubits[0]);
                let mb = self.mask(qubits[1]);
                for i in 0..self.amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        let j = (i & !ma) | mb;
                        self.amps.swap(i, j);
                    }
                }
            }
            Gate::GlobalPhase { turns } => {
                let factor = phase_factor(turns);
                for amp in self.amps.iter_mut() {
                    *amp *= factor;
                }
            }
        }
        Ok(())
    }

    /// Applies every gate of `circuit` in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<(), Error> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::QubitCountMismatch {
                circuit: circuit.num_qubits(),
                state: self.num_qubits,
            });
        }
        for gate in circuit.gates() {
            self.apply(gate)?;
        }
        Ok(())
    }

    /// Probability that `qubit` reads `value`.
    pub fn marginal_probability(&self, qubit: usize, value: bool) -> Result<f64, Error> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        let m = self.mask(qubit);
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| (i & m != 0) == value)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Measurement distribution of the first `register_len` qubits, tracing
    /// out the rest.
    pub fn leading_register_distribution(
        &self,
        register_len: usize,
    ) -> Result<OutcomeDistribution, Error> {
        if register_len == 0 || register_len > self.num_qubits {
            return Err(Error::TauOutOfRange {
                tau: register_len,
                max: self.num_qubits,
            });
        }
        let block = 1usize << (self.num_qubits - register_len);
        let probs: Vec<f64> = (0..1usize << register_len)
            .map(|j| {
                self.amps[j * block..(j + 1) * block]
                    .iter()
                    .map(|a| a.norm_sqr())
                    .sum()
            })
            .collect();
        OutcomeDistribution::new(register_len, probs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: Complex64, b: Complex64) {
        assert!((a - b).norm() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn basis_state_has_unit_amplitude_at_index() {
        let s = StateVector::basis_state(3, 5).unwrap();
        assert_eq!(s.dimension(), 8);
        for i in 0..8 {
            let expected = if i == 5 { 1.0 } else { 0.0 };
            assert_eq!(s.probability(i), expected);
        }
    }

    #[test]
    fn basis_state_rejects_budget_and_index_violations() {
        assert_eq!(
            StateVector::basis_state(25, 0),
            Err(Error::QubitBudgetExceeded {
                requested: 25,
                limit: 24
            })
        );
        assert_eq!(
            StateVector::basis_state(2, 4),
            Err(Error::BasisIndexOutOfRange {
                index: 4,
                dimension: 4
            })
        );
    }

    #[test]
    fn from_amplitudes_rejects_bad_lengths_and_norms() {
        let bad_len = vec![Complex64::new(1.0, 0.0); 3];
        assert_eq!(
            StateVector::from_amplitudes(bad_len),
            Err(Error::AmplitudeLengthNotPowerOfTwo { len: 3 })
        );
        let unnormalized = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(matches!(
            StateVector::from_amplitudes(unnormalized),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn hadamard_splits_and_recombines() {
        let mut s = StateVector::basis_state(1, 0).unwrap();
        s.apply(&Gate::Hadamard { target: 0 }).unwrap();
        assert_close(s.amplitudes()[0], Complex64::new(FRAC_1_SQRT_2, 0.0));
        assert_close(s.amplitudes()[1], Complex64::new(FRAC_1_SQRT_2, 0.0));
        s.apply(&Gate::Hadamard { target: 0 }).unwrap();
        assert_close(s.amplitudes()[0], Complex64::new(1.0, 0.0));
        assert_close(s.amplitudes()[1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        // On two qubits, flipping qubit 1 moves |00> to |01>, i.e. index 1.
        let mut s = StateVector::basis_state(2, 0).unwrap();
        s.apply(&Gate::Hadamard { target: 1 }).unwrap();
        assert!(s.probability(0) > 0.49 && s.probability(1) > 0.49);
        assert_eq!(s.probability(2), 0.0);
        assert_eq!(s.probability(3), 0.0);
    }

    #[test]
    fn phase_diag_conjugate_pair() {
        let mut s = StateVector::basis_state(1, 0).unwrap();
        s.apply(&Gate::Hadamard { target: 0 }).unwrap();
        s.apply(&Gate::PhaseDiag {
            target: 0,
            turns: 0.25,
        })
        .unwrap();
        // Bit 0 picks up e^{-i pi/2} = -i, bit 1 picks up +i.
        assert_close(s.amplitudes()[0], Complex64::new(0.0, -FRAC_1_SQRT_2));
        assert_close(s.amplitudes()[1], Complex64::new(0.0, FRAC_1_SQRT_2));
    }

    #[test]
    fn controlled_phase_diag_selects_by_bit_pair() {
        let turns = [0.0, 0.125, 0.25, 0.5];
        for index in 0..4 {
            let mut s = StateVector::basis_state(2, index).unwrap();
            s.apply(&Gate::ControlledPhaseDiag {
                qubits: [0, 1],
                turns,
            })
            .unwrap();
            // Basis index equals the (bit 0, bit 1) selector here.
            let expected = phase_factor(turns[index]);
            assert_close(s.amplitudes()[index], expected);
        }
    }

    #[test]
    fn swap_exchanges_qubit_values() {
        let mut s = StateVector::basis_state(2, 2).unwrap(); // |10>
        s.apply(&Gate::Swap { qubits: [0, 1] }).unwrap();
        assert_eq!(s.probability(1), 1.0); // |01>
        let mut t = StateVector::basis_state(3, 4).unwrap(); // |100>
        t.apply(&Gate::Swap { qubits: [0, 2] }).unwrap();
        assert_eq!(t.probability(1), 1.0); // |001>
    }

    #[test]
    fn global_phase_rotates_every_amplitude() {
        let mut s = StateVector::basis_state(2, 3).unwrap();
        s.apply(&Gate::GlobalPhase { turns: 0.5 }).unwrap();
        assert_close(s.amplitudes()[3], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn cnot_composed_from_hadamard_and_controlled_z() {
        // H on target, controlled-Z, H on target equals CNOT.
        let cz = Gate::controlled_phase(0, 1, 0.5);
        for (input, expected) in [(0usize, 0usize), (1, 1), (2, 3), (3, 2)] {
            let mut s = StateVector::basis_state(2, input).unwrap();
            s.apply(&Gate::Hadamard { target: 1 }).unwrap();
            s.apply(&cz).unwrap();
            s.apply(&Gate::Hadamard { target: 1 }).unwrap();
            assert!(
                s.probability(expected) > 1.0 - 1e-12,
                "input {input} gave {:?}",
                s.amplitudes()
            );
        }
    }

    #[test]
    fn random_circuit_preserves_norm() {
        let mut s = StateVector::basis_state(4, 9).unwrap();
        let mut c = Circuit::new(4);
        for q in 0..4 {
            c.push(Gate::Hadamard { target: q }).unwrap();
        }
        c.push(Gate::ControlledPhaseDiag {
            qubits: [0, 2],
            turns: [0.11, -0.3, 0.77, 1.9],
        })
        .unwrap();
        c.push(Gate::Swap { qubits: [1, 3] }).unwrap();
        c.push(Gate::PhaseDiag {
            target: 2,
            turns: -2.25,
        })
        .unwrap();
        c.push(Gate::GlobalPhase { turns: 0.3 }).unwrap();
        s.apply_circuit(&c).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_factor_reduces_large_turn_counts() {
        let a = phase_factor(0.3);
        let b = phase_factor(1e6 + 0.3);
        assert!((a - b).norm() < 1e-9);
    }

    #[test]
    fn marginal_probability_reads_single_qubit() {
        let mut s = StateVector::basis_state(2, 0).unwrap();
        s.apply(&Gate::Hadamard { target: 0 }).unwrap();
        assert!((s.marginal_probability(0, true).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(s.marginal_probability(1, true).unwrap(), 0.0);
        assert!((s.marginal_probability(1, false).unwrap() - 1.0).abs() < 1e-12);
        assert!(s.marginal_probability(2, false).is_err());
    }

    #[test]
    fn leading_register_distribution_groups_blocks() {
        // |psi> = H(0) |00>: outcomes 0 and 1 of the one-qubit leading
        // register each carry probability 1/2.
        let mut s = StateVector::basis_state(2, 0).unwrap();
        s.apply(&Gate::Hadamard { target: 0 }).unwrap();
        let d = s.leading_register_distribution(1).unwrap();
        assert!((d.probability(0) - 0.5).abs() < 1e-12);
        assert!((d.probability(1) - 0.5).abs() < 1e-12);
        let full = s.leading_register_distribution(2).unwrap();
        assert!((full.probability(0) - 0.5).abs() < 1e-12);
        assert!((full.probability(2) - 0.5).abs() < 1e-12);
        assert_eq!(full.probability(1), 0.0);
    }

    #[test]
    fn apply_circuit_rejects_qubit_count_mismatch() {
        let mut s = StateVector::basis_state(2, 0).unwrap();
        let c = Circuit::new(3);
        assert_eq!(
            s.apply_circuit(&c),
            Err(Error::QubitCountMismatch {
                circuit: 3,
                state: 2
            })
        );
    }
}
