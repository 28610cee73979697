//! Dense statevector simulation.
//!
//! The gate set is deliberately small: Hadamard, single-qubit diagonal phase,
//! two-qubit diagonal phase, swap, and a global phase. Everything the rest of
//! the crate builds (oracles, inverse Fourier transforms, controlled rotations)
//! compiles down to these five kinds.
//!
//! Conventions used throughout:
//! * Qubit 0 is the most significant bit of a basis index.
//! * All phase parameters are in turns (full revolutions); radians appear only
//!   inside gate application.

mod distribution;
mod gate;
mod state;

pub use distribution::OutcomeDistribution;
pub use gate::{Circuit, Gate};
pub use state::{StateVector, MAX_QUBITS};
