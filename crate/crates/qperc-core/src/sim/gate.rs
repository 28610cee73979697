use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// One gate from the fixed five-kind set. Phase parameters are in turns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Hadamard {
        target: usize,
    },
    /// diag(e^{-2 pi i t}, e^{+2 pi i t}) on `target`, `t` in turns.
    PhaseDiag {
        target: usize,
        turns: f64,
    },
    /// General two-qubit diagonal: basis state with bits (b0, b1) on
    /// `qubits[0]`, `qubits[1]` picks up e^{2 pi i turns[(b0 << 1) | b1]}.
    ControlledPhaseDiag {
        qubits: [usize; 2],
        turns: [f64; 4],
    },
    Swap {
        qubits: [usize; 2],
    },
    GlobalPhase {
        turns: f64,
    },
}

impl Gate {
    /// Standard controlled phase: e^{2 pi i t} on the |11> component only.
    pub fn controlled_phase(control: usize, target: usize, turns: f64) -> Gate {
        Gate::ControlledPhaseDiag {
            qubits: [control, target],
            turns: [0.0, 0.0, 0.0, turns],
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Hadamard { target } => Gate::Hadamard { target },
            Gate::PhaseDiag { target, turns } => Gate::PhaseDiag {
                target,
                turns: -turns,
            },
            Gate::ControlledPhaseDiag { qubits, turns } => Gate::ControlledPhaseDiag {
                qubits,
                turns: [-turns[0], -turns[1], -turns[2], -turns[3]],
            },
            Gate::Swap { qubits } => Gate::Swap { qubits },
            Gate::GlobalPhase { turns } => Gate::GlobalPhase { turns: -turns },
        }
    }

    /// Cost in elementary one- and two-qubit gates: a swap is three
    /// controlled gates, everything else counts as one.
    pub fn elementary_count(&self) -> u64 {
        match self {
            Gate::Swap { .. } => 3,
            _ => 1,
        }
    }

    pub(crate) fn validate(&self, num_qubits: usize) -> Result<(), Error> {
        let check = |qubit: usize| {
            if qubit >= num_qubits {
                Err(Error::QubitOutOfRange { qubit, num_qubits })
            } else {
                Ok(())
            }
        };
        match *self {
            Gate::Hadamard { target } | Gate::PhaseDiag { target, .. } => check(target),
            Gate::ControlledPhaseDiag { qubits, .. } | Gate::Swap { qubits } => {
                check(qubits[0])?;
                check(qubits[1])?;
                if qubits[0] == qubits[1] {
                    return Err(Error::DuplicateQubit { qubit: qubits[0] });
                }
                Ok(())
            }
            Gate::GlobalPhase { .. } => Ok(()),
        }
    }
}

/// Normalizes -0.0 so dumps never distinguish signed zeros.
fn turn(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Hadamard { target } => write!(f, "H {target}"),
            Gate::PhaseDiag { target, turns } => write!(f, "PHASE {target} {}", turn(turns)),
            Gate::ControlledPhaseDiag { qubits, turns } => write!(
                f,
                "CPHASE {} {} {} {} {} {}",
                qubits[0],
                qubits[1],
                turn(turns[0]),
                turn(turns[1]),
                turn(turns[2]),
                turn(turns[3]),
            ),
            Gate::Swap { qubits } => write!(f, "SWAP {} {}", qubits[0], qubits[1]),
            Gate::GlobalPhase { turns } => write!(f, "GLOBAL {}", turn(turns)),
        }
    }
}

/// An ordered gate list over a fixed qubit count.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking its qubit indices against this circuit.
    pub fn push(&mut self, gate: Gate) -> Result<(), Error> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`, which must be on the same qubit count.
    pub fn extend(&mut self, other: &Circuit) -> Result<(), Error> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::QubitCountMismatch {
                circuit: other.num_qubits,
                state: self.num_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Total cost in elementary gates; see [`Gate::elementary_count`].
    pub fn elementary_gate_count(&self) -> u64 {
        self.gates.iter().map(Gate::elementary_count).sum()
    }

    /// The adjoint circuit: each gate inverted, order reversed.
    pub fn inverted(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        Ok(())
    }
}
