use core::fmt;

/// Error type shared by every fallible operation in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Two vectors that must share a dimension do not.
    DimensionMismatch { expected: usize, got: usize },
    /// A weight or input vector with zero entries.
    EmptyVector,
    /// A weight component outside [-1, 1).
    WeightOutOfRange { index: usize },
    /// An input component that is not -1 or +1.
    InputNotSign { index: usize },
    /// A training target that is not -1 or +1.
    TargetNotSign { index: usize },
    /// A classifier callback returned something other than -1 or +1.
    ClassifierOutputNotSign,
    /// An empty training set.
    EmptyTrainingSet,
    /// A phase outside [0, 1).
    PhiOutOfRange { phi: f64 },
    /// A phase-register size outside the supported range.
    TauOutOfRange { tau: usize, max: usize },
    /// A weight-digit precision outside the supported range.
    DeltaOutOfRange { delta: usize, max: usize },
    /// A learning rate outside [0, 1].
    EtaOutOfRange { eta: f64 },
    /// A shot count that is zero or even; majority votes need an odd count.
    ShotsNotOdd { shots: usize },
    /// A precision-bit count of zero.
    PrecisionBitsZero,
    /// An epsilon outside (0, 1).
    EpsilonOutOfRange { epsilon: f64 },
    /// A gate references a qubit index outside its circuit.
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    /// A two-qubit gate references the same qubit twice.
    DuplicateQubit { qubit: usize },
    /// A basis-state index outside the state's dimension.
    BasisIndexOutOfRange { index: usize, dimension: usize },
    /// An amplitude vector whose length is not a nonzero power of two.
    AmplitudeLengthNotPowerOfTwo { len: usize },
    /// More qubits requested than the dense backend will allocate.
    QubitBudgetExceeded { requested: usize, limit: usize },
    /// A circuit applied to a state with a different qubit count.
    QubitCountMismatch { circuit: usize, state: usize },
    /// An amplitude or probability vector whose total is not 1.
    NotNormalized { total: f64 },
    /// A probability vector with an entry outside [0, 1] or a non-power-of-two length.
    InvalidDistribution,
    /// Two supposedly distinct superposed inputs with identical entries.
    DuplicateInput { index: usize },
    /// A superposition branch with zero amplitude.
    ZeroAmplitude { index: usize },
    /// Amplitude count does not match input count.
    AmplitudeCountMismatch { expected: usize, got: usize },
    /// A closed-form gate count too large for its counter.
    CountOverflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::EmptyVector => write!(f, "vector must have at least one entry"),
            Error::WeightOutOfRange { index } => {
                write!(f, "weight {index} outside [-1, 1)")
            }
            Error::InputNotSign { index } => {
                write!(f, "input {index} must be -1 or +1")
            }
            Error::TargetNotSign { index } => {
                write!(f, "target {index} must be -1 or +1")
            }
            Error::ClassifierOutputNotSign => {
                write!(f, "classifier must return -1 or +1")
            }
            Error::EmptyTrainingSet => write!(f, "training set is empty"),
            Error::PhiOutOfRange { phi } => write!(f, "phase {phi} outside [0, 1)"),
            Error::TauOutOfRange { tau, max } => {
                write!(f, "phase-register size {tau} outside 1..={max}")
            }
            Error::DeltaOutOfRange { delta, max } => {
                write!(f, "weight precision {delta} outside 1..={max}")
            }
            Error::EtaOutOfRange { eta } => write!(f, "learning rate {eta} outside [0, 1]"),
            Error::ShotsNotOdd { shots } => {
                write!(f, "shot count {shots} must be odd and at least 1")
            }
            Error::PrecisionBitsZero => write!(f, "precision bit count must be at least 1"),
            Error::EpsilonOutOfRange { epsilon } => {
                write!(f, "epsilon {epsilon} outside (0, 1)")
            }
            Error::QubitOutOfRange { qubit, num_qubits } => {
                write!(f, "qubit {qubit} outside circuit of {num_qubits} qubits")
            }
            Error::DuplicateQubit { qubit } => {
                write!(f, "gate references qubit {qubit} twice")
            }
            Error::BasisIndexOutOfRange { index, dimension } => {
                write!(f, "basis index {index} outside dimension {dimension}")
            }
            Error::AmplitudeLengthNotPowerOfTwo { len } => {
                write!(f, "amplitude vector length {len} is not a nonzero power of two")
            }
            Error::QubitBudgetExceeded { requested, limit } => {
                write!(
                    f,
                    "{requested} qubits requested but the dense backend allocates at most {limit}"
                )
            }
            Error::QubitCountMismatch { circuit, state } => {
                write!(f, "circuit on {circuit} qubits applied to state on {state}")
            }
            Error::NotNormalized { total } => {
                write!(f, "squared magnitudes sum to {total}, expected 1")
            }
            Error::InvalidDistribution => write!(f, "invalid outcome distribution"),
            Error::DuplicateInput { index } => {
                write!(f, "superposed input {index} duplicates an earlier one")
            }
            Error::ZeroAmplitude { index } => {
                write!(f, "superposed input {index} has zero amplitude")
            }
            Error::AmplitudeCountMismatch { expected, got } => {
                write!(f, "expected {expected} amplitudes, got {got}")
            }
            Error::CountOverflow => write!(f, "gate count exceeds the counter range"),
        }
    }
}

impl core::error::Error for Error {}
