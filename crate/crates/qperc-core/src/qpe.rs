//! Phase estimation on a register of `tau` qubits.
//!
//! Estimating a phase `phi` in [0, 1) yields outcome `j` with probability
//!
//! ```text
//! p_j = sin^2(2^tau pi d_j) / (2^(2 tau) sin^2(pi d_j)),   d_j = phi - j / 2^tau
//! ```
//!
//! reduced cyclically, with the limit `p_j = 1` when `phi` lies exactly on
//! grid point `j`. The numerator is the same for every `j` (shifting `j`
//! changes `2^tau d_j` by an integer), which the closed-form routines exploit.
//!
//! The most significant register bit reads 1 exactly when the estimate lands
//! in [1/2, 1), so its agreement with `phi >= 1/2` is the probability that a
//! single measurement reproduces a threshold decision on `phi`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::sim::{Circuit, Gate, OutcomeDistribution, MAX_QUBITS};

/// Largest register for the streamed closed-form routines. The bound keeps
/// `2^tau` inside `u64`; runtime still grows as `2^tau`.
pub const MAX_ANALYTIC_TAU: usize = 62;

/// Distances to the nearest grid phase below this count as exact. Well under
/// half the spacing of any supported register, so at most one outcome
/// qualifies.
const EXACT_PHASE_EPS: f64 = 1e-15;

fn validate_phi(phi: f64) -> Result<(), Error> {
    if phi.is_finite() && (0.0..1.0).contains(&phi) {
        Ok(())
    } else {
        Err(Error::PhiOutOfRange { phi })
    }
}

fn validate_tau(tau: usize, max: usize) -> Result<(), Error> {
    if (1..=max).contains(&tau) {
        Ok(())
    } else {
        Err(Error::TauOutOfRange { tau, max })
    }
}

/// Outcome whose grid phase `j / 2^tau` is cyclically nearest to `phi`.
fn nearest_grid_outcome(phi: f64, tau: usize) -> u64 {
    let scale = (1u64 << tau) as f64;
    let j = (phi * scale).round() as u64;
    j & ((1u64 << tau) - 1)
}

/// `phi - j / scale`, reduced to [-1/2, 1/2].
fn reduced_distance(phi: f64, j: u64, scale: f64) -> f64 {
    let d = phi - (j as f64) / scale;
    d - d.round()
}

/// `sin^2(pi * (2^tau phi mod 1))`, the shared numerator of every `p_j`.
fn shared_numerator(phi: f64, scale: f64) -> f64 {
    let t = phi * scale;
    let frac = t - t.round();
    let s = (PI * frac).sin();
    s * s
}

fn outcome_probability(phi: f64, j: u64, scale: f64, numerator: f64) -> f64 {
    let s = (PI * reduced_distance(phi, j, scale)).sin();
    numerator / (scale * scale * s * s)
}

/// Full outcome distribution of estimating `phi` with `tau` qubits.
///
/// Materializes all `2^tau` probabilities, so `tau` is capped at
/// [`MAX_QUBITS`]. Phases within 1e-15 of a grid point produce an exact point
/// mass.
pub fn analytic_distribution(phi: f64, tau: usize) -> Result<OutcomeDistribution, Error> {
    validate_phi(phi)?;
    validate_tau(tau, MAX_QUBITS)?;
    let scale = (1u64 << tau) as f64;
    let j_star = nearest_grid_outcome(phi, tau);
    if reduced_distance(phi, j_star, scale).abs() < EXACT_PHASE_EPS {
        return OutcomeDistribution::point_mass(tau, j_star as usize);
    }
    let numerator = shared_numerator(phi, scale);
    let probs: Vec<f64> = (0..1u64 << tau)
        .map(|j| outcome_probability(phi, j, scale, numerator))
        .collect();
    OutcomeDistribution::new(tau, probs)
}

/// Probability that the register's most significant bit agrees with the
/// threshold decision `phi >= 1/2`.
///
/// Streams the sum over half the outcome range without materializing it, so
/// `tau` may go up to [`MAX_ANALYTIC_TAU`]; runtime is `O(2^tau)`.
pub fn first_bit_success_probability(phi: f64, tau: usize) -> Result<f64, Error> {
    validate_phi(phi)?;
    validate_tau(tau, MAX_ANALYTIC_TAU)?;
    let size = 1u64 << tau;
    let half = size >> 1;
    let scale = size as f64;
    let upper_is_success = phi >= 0.5;
    let j_star = nearest_grid_outcome(phi, tau);
    if reduced_distance(phi, j_star, scale).abs() < EXACT_PHASE_EPS {
        let lands_upper = j_star >= half;
        return Ok(if lands_upper == upper_is_success {
            1.0
        } else {
            0.0
        });
    }
    let numerator = shared_numerator(phi, scale);
    let range = if upper_is_success { half..size } else { 0..half };
    let mut total = 0.0;
    for j in range {
        total += outcome_probability(phi, j, scale, numerator);
    }
    Ok(total.min(1.0))
}

/// Register size needed to resolve `precision_bits` binary digits of a phase
/// with failure probability at most `epsilon`:
/// `tau = m + ceil(log2(2 + 1/(2 epsilon)))`.
pub fn required_tau(precision_bits: usize, epsilon: f64) -> Result<usize, Error> {
    if precision_bits == 0 {
        return Err(Error::PrecisionBitsZero);
    }
    if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= 1.0 {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let extra = (2.0 + 1.0 / (2.0 * epsilon)).log2().ceil() as usize;
    Ok(precision_bits + extra)
}

/// Inverse quantum Fourier transform on `tau` qubits.
///
/// Sends the uniform-magnitude state with phase ramp `e^{2 pi i y j / 2^tau}`
/// to the basis state `|j>`. Qubit order follows the crate convention (qubit 0
/// most significant), so the circuit starts by reversing the register with
/// swaps, then walks targets from the least significant end upward: each
/// target gets its accumulated controlled phases (control `s`, angle
/// `-1/2^(s-t+1)` turns) followed by a Hadamard.
pub fn build_inverse_qft(tau: usize) -> Result<Circuit, Error> {
    // Construction is list-building, so the cap is the phase-resolution
    // limit rather than the dense-simulation budget.
    validate_tau(tau, MAX_ANALYTIC_TAU)?;
    let mut circuit = Circuit::new(tau);
    for i in 0..tau / 2 {
        circuit.push(Gate::Swap {
            qubits: [i, tau - 1 - i],
        })?;
    }
    for t in (0..tau).rev() {
        for s in (t + 1..tau).rev() {
            let turns = -(0.5f64.powi((s - t + 1) as i32));
            circuit.push(Gate::controlled_phase(s, t, turns))?;
        }
        circuit.push(Gate::Hadamard { target: t })?;
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::SeededRng;
    use crate::StateVector;
    use alloc::vec::Vec;
    use num_complex::Complex64;

    // Oracle: the outcome law evaluated the slow way, straight from the
    // defining amplitude sum. Probability of outcome j is
    //   |(1/2^tau) sum_y e^{2 pi i y (phi - j/2^tau)}|^2
    // with the geometric series summed term by term.
    fn brute_force_distribution(phi: f64, tau: usize) -> Vec<f64> {
        let size = 1usize << tau;
        (0..size)
            .map(|j| {
                let d = phi - j as f64 / size as f64;
                let mut acc = Complex64::new(0.0, 0.0);
                for y in 0..size {
                    acc += Complex64::from_polar(1.0, core::f64::consts::TAU * d * y as f64);
                }
                (acc / size as f64).norm_sqr()
            })
            .collect()
    }

    // Phases with no short binary expansion, to exercise the generic branch.
    const ROUGH_PHASES: [f64; 5] = [
        0.123_456_789_012_345,
        core::f64::consts::FRAC_1_PI, // 1/pi
        0.367_879_441_171_442, // 1/e
        0.414_213_562_373_095, // sqrt(2) - 1
        0.618_033_988_749_894, // golden ratio conjugate
    ];

    #[test]
    fn closed_form_matches_brute_force() {
        for tau in [1usize, 2, 3, 5] {
            for k in 0..64 {
                let phi = k as f64 / 64.0;
                let expected = brute_force_distribution(phi, tau);
                let got = analytic_distribution(phi, tau).unwrap();
                for (j, &e) in expected.iter().enumerate() {
                    assert!(
                        (got.probability(j) - e).abs() < 1e-12,
                        "tau {tau} phi {phi} outcome {j}: {} vs {e}",
                        got.probability(j)
                    );
                }
            }
            for &phi in &ROUGH_PHASES {
                let expected = brute_force_distribution(phi, tau);
                let got = analytic_distribution(phi, tau).unwrap();
                for (j, &e) in expected.iter().enumerate() {
                    assert!((got.probability(j) - e).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn grid_phases_give_exact_point_mass() {
        for tau in 1..=6usize {
            let size = 1usize << tau;
            for j in 0..size {
                let phi = j as f64 / size as f64;
                let d = analytic_distribution(phi, tau).unwrap();
                assert_eq!(d.probability(j), 1.0, "tau {tau} j {j}");
                assert_eq!(d.probabilities().iter().sum::<f64>(), 1.0);
            }
        }
    }

    #[test]
    fn half_phase_concentrates_on_upper_boundary_outcome() {
        let d = analytic_distribution(0.5, 3).unwrap();
        assert_eq!(d.probability(4), 1.0);
        let d = analytic_distribution(0.25, 2).unwrap();
        assert_eq!(d.probability(1), 1.0);
    }

    #[test]
    fn example_off_grid_phase_matches_brute_force() {
        let expected = brute_force_distribution(0.3, 4);
        let got = analytic_distribution(0.3, 4).unwrap();
        for (j, &e) in expected.iter().enumerate() {
            assert!((got.probability(j) - e).abs() < 1e-12);
        }
    }

    #[test]
    fn probabilities_sum_to_one_for_random_phases() {
        let mut rng = SeededRng::new(20_220_330);
        for _ in 0..1_000 {
            let phi = rng.unit_f64();
            let tau = 1 + rng.index(10);
            let d = analytic_distribution(phi, tau).unwrap();
            let total: f64 = d.probabilities().iter().sum();
            assert!((total - 1.0).abs() < 1e-10, "phi {phi} tau {tau}: {total}");
        }
    }

    #[test]
    fn distribution_shifts_with_grid_translations() {
        let tau = 5;
        let size = 1usize << tau;
        for &phi in &[0.037, 0.41, 0.88] {
            let base = analytic_distribution(phi, tau).unwrap();
            for k in [1usize, 7, 19] {
                let shifted_phi = (phi + k as f64 / size as f64) % 1.0;
                let shifted = analytic_distribution(shifted_phi, tau).unwrap();
                for j in 0..size {
                    let expected = base.probability(j);
                    let got = shifted.probability((j + k) % size);
                    assert!((got - expected).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn distribution_reflects_under_phase_negation() {
        let tau = 4;
        let size = 1usize << tau;
        for &phi in &[0.3, 0.111, 0.77] {
            let base = analytic_distribution(phi, tau).unwrap();
            let reflected = analytic_distribution((1.0 - phi) % 1.0, tau).unwrap();
            for j in 0..size {
                let mirror = (size - j) % size;
                assert!((base.probability(j) - reflected.probability(mirror)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_bit_agrees_with_materialized_sums() {
        let mut rng = SeededRng::new(7);
        for _ in 0..200 {
            let phi = rng.unit_f64();
            let tau = 1 + rng.index(10);
            let d = analytic_distribution(phi, tau).unwrap();
            let upper = d.first_bit_probability();
            let expected = if phi >= 0.5 { upper } else { 1.0 - upper };
            let got = first_bit_success_probability(phi, tau).unwrap();
            assert!((got - expected).abs() < 1e-12, "phi {phi} tau {tau}");
        }
    }

    #[test]
    fn first_bit_certain_for_exact_boundary_phases() {
        for tau in 1..=12usize {
            assert_eq!(first_bit_success_probability(0.5, tau).unwrap(), 1.0);
            assert_eq!(first_bit_success_probability(0.0, tau).unwrap(), 1.0);
        }
    }

    #[test]
    fn first_bit_example_near_threshold() {
        let expected: f64 = brute_force_distribution(0.49, 4)[..8].iter().sum();
        let got = first_bit_success_probability(0.49, 4).unwrap();
        assert!((got - expected).abs() < 1e-12);
        // Just below threshold with a coarse register: agreement is weak.
        assert!(got < 0.75, "{got}");
    }

    #[test]
    fn near_grid_phases_stay_continuous_across_exact_branch() {
        let tau = 6;
        let grid = 5.0 / 64.0;
        // Inside the exactness window.
        let d = analytic_distribution(grid + 1e-16, tau).unwrap();
        assert_eq!(d.probability(5), 1.0);
        // Just outside: still overwhelmingly concentrated.
        let d = analytic_distribution(grid + 1e-9, tau).unwrap();
        assert!(d.probability(5) > 1.0 - 1e-12);
        assert!((d.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn required_tau_examples() {
        assert_eq!(required_tau(1, 0.25).unwrap(), 3);
        assert_eq!(required_tau(1, 0.15).unwrap(), 4);
        assert_eq!(required_tau(2, 0.5).unwrap(), 4);
        assert_eq!(required_tau(1, 0.5), Ok(3));
        assert!(matches!(
            required_tau(0, 0.25),
            Err(Error::PrecisionBitsZero)
        ));
        assert!(matches!(
            required_tau(1, 0.0),
            Err(Error::EpsilonOutOfRange { .. })
        ));
        assert!(matches!(
            required_tau(1, 1.0),
            Err(Error::EpsilonOutOfRange { .. })
        ));
    }

    #[test]
    fn inverse_qft_smallest_registers_have_expected_gates() {
        let c1 = build_inverse_qft(1).unwrap();
        assert_eq!(c1.gates(), &[Gate::Hadamard { target: 0 }]);
        assert_eq!(c1.elementary_gate_count(), 1);

        let c2 = build_inverse_qft(2).unwrap();
        assert_eq!(
            c2.gates(),
            &[
                Gate::Swap { qubits: [0, 1] },
                Gate::Hadamard { target: 1 },
                Gate::controlled_phase(1, 0, -0.25),
                Gate::Hadamard { target: 0 },
            ]
        );
        assert_eq!(c2.elementary_gate_count(), 6);
    }

    #[test]
    fn inverse_qft_gate_total_follows_triangle_plus_swaps() {
        for tau in 1..=10usize {
            let c = build_inverse_qft(tau).unwrap();
            let expected = tau * (tau + 1) / 2 + 3 * (tau / 2);
            assert_eq!(c.elementary_gate_count(), expected as u64, "tau {tau}");
        }
    }

    fn fourier_state(tau: usize, phi: f64) -> StateVector {
        let size = 1usize << tau;
        let scale = 1.0 / (size as f64).sqrt();
        let amps: Vec<Complex64> = (0..size)
            .map(|y| {
                Complex64::from_polar(scale, core::f64::consts::TAU * phi * y as f64)
            })
            .collect();
        StateVector::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn inverse_qft_recovers_every_grid_state() {
        for tau in 1..=4usize {
            let circuit = build_inverse_qft(tau).unwrap();
            let size = 1usize << tau;
            for j in 0..size {
                let mut state = fourier_state(tau, j as f64 / size as f64);
                state.apply_circuit(&circuit).unwrap();
                assert!(
                    state.probability(j) > 1.0 - 1e-10,
                    "tau {tau} j {j}: {}",
                    state.probability(j)
                );
            }
        }
    }

    #[test]
    fn inverse_qft_off_grid_matches_closed_form() {
        for &(phi, tau) in &[(0.3, 4usize), (0.777, 5), (0.123_456, 3)] {
            let circuit = build_inverse_qft(tau).unwrap();
            let mut state = fourier_state(tau, phi);
            state.apply_circuit(&circuit).unwrap();
            let measured = state.leading_register_distribution(tau).unwrap();
            let expected = analytic_distribution(phi, tau).unwrap();
            for j in 0..1usize << tau {
                assert!(
                    (measured.probability(j) - expected.probability(j)).abs() < 1e-12,
                    "phi {phi} tau {tau} outcome {j}"
                );
            }
        }
    }

    #[test]
    fn validation_rejects_bad_phases_and_registers() {
        assert!(matches!(
            analytic_distribution(1.0, 3),
            Err(Error::PhiOutOfRange { .. })
        ));
        assert!(matches!(
            analytic_distribution(-0.1, 3),
            Err(Error::PhiOutOfRange { .. })
        ));
        assert!(matches!(
            analytic_distribution(f64::NAN, 3),
            Err(Error::PhiOutOfRange { .. })
        ));
        assert!(matches!(
            analytic_distribution(0.5, 0),
            Err(Error::TauOutOfRange { .. })
        ));
        assert!(matches!(
            analytic_distribution(0.5, 25),
            Err(Error::TauOutOfRange { .. })
        ));
        assert!(first_bit_success_probability(0.5, 62).is_ok());
        assert!(matches!(
            first_bit_success_probability(0.5, 63),
            Err(Error::TauOutOfRange { .. })
        ));
        assert!(matches!(
            build_inverse_qft(0),
            Err(Error::TauOutOfRange { .. })
        ));
    }
}
