//! Command-line interface.
//!
//! Exit codes: 0 on success, 2 for usage and configuration errors, 1 for
//! runtime failures (missing files, malformed data).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use qperc_core::perceptron::{classical_activation, quantize_weights, to_phase, InputVector, WeightVector};
use qperc_core::qperceptron::{
    build_variant_a, build_variant_b, gate_count_report, quantum_classifier, run, Backend,
    RunConfig, Variant,
};
use qperc_core::seeds::{derive, SeededRng};
use qperc_core::MAX_QUBITS;

use crate::dataset::load_training_set;
use crate::experiments::{self, HistogramSpec, SweepSpec};
use crate::report::{self, GatesReport, HistReport, Meta, RunReport, TrainReport};
use crate::HarnessError;

#[derive(Parser)]
#[command(name = "qperc", version, about = "Quantum perceptron simulator experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one weight/input pair and report the read-out distribution.
    Run(RunArgs),
    /// Sweep classification success over problem size and register width.
    Sweep(SweepArgs),
    /// Histogram the scaled net input over random draws.
    Hist(HistArgs),
    /// Score the recommended register width for each problem size.
    TauRule(TauRuleArgs),
    /// Train a perceptron on a sign-valued data file.
    Train(TrainArgs),
    /// Report gate counts for a configuration.
    Gates(GatesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Weights enter as rotation angles in the gate list.
    A,
    /// Weights enter as binary digit and sign qubits.
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    /// Closed-form phase-register distribution.
    Analytic,
    /// Dense state-vector simulation of the constructed circuit.
    GateLevel,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifierArg {
    /// Sign of the net input.
    Classical,
    /// Majority vote over sampled quantum read-outs.
    Quantum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitArg {
    Zeros,
    Random,
}

fn variant_name(v: VariantArg) -> &'static str {
    match v {
        VariantArg::A => "a",
        VariantArg::B => "b",
    }
}

fn backend_name(b: BackendArg) -> &'static str {
    match b {
        BackendArg::Analytic => "analytic",
        BackendArg::GateLevel => "gate-level",
    }
}

fn to_backend(b: BackendArg) -> Backend {
    match b {
        BackendArg::Analytic => Backend::Analytic,
        BackendArg::GateLevel => Backend::GateLevel,
    }
}

fn to_variant(arg: VariantArg, delta: Option<usize>) -> Result<Variant, HarnessError> {
    match arg {
        VariantArg::A => {
            if delta.is_some() {
                return Err(HarnessError::invalid("--delta applies only to --variant b"));
            }
            Ok(Variant::A)
        }
        VariantArg::B => {
            let delta =
                delta.ok_or_else(|| HarnessError::invalid("--variant b needs --delta"))?;
            Ok(Variant::B { delta })
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Input dimension; defaults to the number of weights.
    #[arg(long)]
    n: Option<usize>,
    /// Phase-register width in qubits.
    #[arg(long)]
    tau: usize,
    /// Comma-separated weights in [-1, 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    weights: Vec<f64>,
    /// Comma-separated input signs (-1 or 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    input: Vec<i8>,
    #[arg(long, value_enum, default_value_t = VariantArg::A)]
    variant: VariantArg,
    /// Binary digits per weight magnitude (variant b only).
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long, value_enum, default_value_t = BackendArg::Analytic)]
    backend: BackendArg,
    /// Measurement shots for the majority vote; must be odd.
    #[arg(long, default_value_t = 1)]
    shots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated problem sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Comma-separated register widths.
    #[arg(long, value_delimiter = ',', required = true)]
    tau: Vec<usize>,
    /// Random draws per (n, tau) cell.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Analytic)]
    backend: BackendArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HistArgs {
    /// Problem size.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 50)]
    bins: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TauRuleArgs {
    /// Comma-separated problem sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    /// Sign-valued CSV file, one example per line, target in the last column.
    #[arg(long)]
    data: PathBuf,
    /// Learning rate in [0, 1].
    #[arg(long, default_value_t = 0.25)]
    eta: f64,
    #[arg(long, default_value_t = 500)]
    max_epochs: usize,
    #[arg(long, value_enum, default_value_t = ClassifierArg::Classical)]
    classifier: ClassifierArg,
    /// Phase-register width for the quantum classifier.
    #[arg(long, default_value_t = 8)]
    tau: usize,
    /// Measurement shots per quantum classification; must be odd.
    #[arg(long, default_value_t = 1)]
    shots: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Analytic)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value_t = InitArg::Zeros)]
    init: InitArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GatesArgs {
    /// Problem size.
    #[arg(long)]
    n: usize,
    /// Phase-register width in qubits.
    #[arg(long)]
    tau: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::A)]
    variant: VariantArg,
    /// Binary digits per weight magnitude (variant b only).
    #[arg(long)]
    delta: Option<usize>,
    /// Include the constructed gate list (zero weights) in the report.
    #[arg(long)]
    dump_circuit: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), HarnessError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run_command(args: RunArgs) -> Result<(), HarnessError> {
    let w = WeightVector::new(args.weights.clone())?;
    let x = InputVector::new(args.input.clone())?;
    let n = args.n.unwrap_or_else(|| w.dimension());
    if n != w.dimension() {
        return Err(HarnessError::invalid(format!(
            "--n {n} does not match {} weight(s)",
            w.dimension()
        )));
    }
    if x.dimension() != n {
        return Err(HarnessError::invalid(format!(
            "--input has {} entries, expected {n}",
            x.dimension()
        )));
    }
    let variant = to_variant(args.variant, args.delta)?;
    let backend = to_backend(args.backend);
    let config = RunConfig {
        n,
        tau: args.tau,
        variant,
        backend,
        shots: args.shots,
    };
    config.validate().map_err(config_error)?;
    let outcome = run(&config, &w, &x, args.seed)?;
    // Report the phase of the weights the circuit actually encodes.
    let phase = match variant {
        Variant::A => to_phase(&w, &x)?,
        Variant::B { delta } => to_phase(&quantize_weights(&w, delta)?.reconstruct(), &x)?,
    };
    let report = RunReport {
        meta: Meta::new("run", args.seed),
        n,
        tau: args.tau,
        variant: variant_name(args.variant).to_string(),
        delta: args.delta,
        backend: backend_name(args.backend).to_string(),
        shots: args.shots,
        weights: args.weights,
        input: args.input,
        net_input: phase.net_input,
        phi: phase.phi,
        activation_probability: outcome.distribution.first_bit_probability(),
        output: outcome.output,
        distribution: outcome.distribution.probabilities().to_vec(),
    };
    emit(args.out.as_deref(), &report::render_json(&report))
}

/// Configuration mistakes reported by the simulator map to usage errors.
fn config_error(e: qperc_core::Error) -> HarnessError {
    HarnessError::invalid(e.to_string())
}

fn sweep_command(args: SweepArgs) -> Result<(), HarnessError> {
    let spec = SweepSpec {
        n_values: args.n,
        tau_values: args.tau,
        trials: args.trials,
        seed: args.seed,
        backend: to_backend(args.backend),
    };
    let report = experiments::sweep(&spec)?;
    let meta = Meta::new("sweep", args.seed);
    emit(args.out.as_deref(), &report::sweep_csv(&meta, &report))
}

fn hist_command(args: HistArgs) -> Result<(), HarnessError> {
    let spec = HistogramSpec {
        n: args.n,
        samples: args.samples,
        bins: args.bins,
        seed: args.seed,
    };
    let h = experiments::histogram(&spec)?;
    let report = HistReport {
        meta: Meta::new("hist", args.seed),
        n: h.n,
        samples: h.samples,
        bins: h.bins,
        mean: h.mean,
        sigma: h.sigma,
        bin_edges: h.bin_edges,
        counts: h.counts,
    };
    emit(args.out.as_deref(), &report::render_json(&report))
}

fn tau_rule_command(args: TauRuleArgs) -> Result<(), HarnessError> {
    let rows = experiments::tau_rule_check(&args.n, args.trials, args.seed)?;
    let meta = Meta::new("tau-rule", args.seed);
    emit(args.out.as_deref(), &report::tau_rule_csv(&meta, &rows))
}

fn train_command(args: TrainArgs) -> Result<(), HarnessError> {
    qperc_core::perceptron::validate_eta(args.eta).map_err(config_error)?;
    let set = load_training_set(&args.data)?;
    let n = set.dimension();
    let initial = match args.init {
        InitArg::Zeros => WeightVector::zeros(n)?,
        InitArg::Random => {
            let mut rng = SeededRng::new(derive(args.seed, &[experiments::INIT_STREAM_TAG]));
            WeightVector::random(n, &mut rng)?
        }
    };
    let train_seed = derive(args.seed, &[experiments::TRAIN_STREAM_TAG]);
    let quantum = args.classifier == ClassifierArg::Quantum;
    let outcome = match args.classifier {
        ClassifierArg::Classical => qperc_core::perceptron::train(
            &set,
            &initial,
            args.eta,
            args.max_epochs,
            classical_activation,
            train_seed,
        )?,
        ClassifierArg::Quantum => {
            let config = RunConfig {
                n,
                tau: args.tau,
                variant: Variant::A,
                backend: to_backend(args.backend),
                shots: args.shots,
            };
            config.validate().map_err(config_error)?;
            qperc_core::perceptron::train(
                &set,
                &initial,
                args.eta,
                args.max_epochs,
                quantum_classifier(config, args.seed),
                train_seed,
            )?
        }
    };
    let report = TrainReport {
        meta: Meta::new("train", args.seed),
        data: args.data.display().to_string(),
        examples: set.len(),
        dimension: n,
        eta: args.eta,
        max_epochs: args.max_epochs,
        classifier: match args.classifier {
            ClassifierArg::Classical => "classical".to_string(),
            ClassifierArg::Quantum => "quantum".to_string(),
        },
        init: match args.init {
            InitArg::Zeros => "zeros".to_string(),
            InitArg::Random => "random".to_string(),
        },
        backend: quantum.then(|| backend_name(args.backend).to_string()),
        tau: quantum.then_some(args.tau),
        shots: quantum.then_some(args.shots),
        epochs_used: outcome.epochs_used,
        accuracy: outcome.accuracy,
        final_weights: outcome.weights.entries().to_vec(),
    };
    emit(args.out.as_deref(), &report::render_json(&report))
}

fn gates_command(args: GatesArgs) -> Result<(), HarnessError> {
    let variant = to_variant(args.variant, args.delta)?;
    let counts = gate_count_report(args.n, args.tau, &variant).map_err(config_error)?;
    let circuit = if args.dump_circuit {
        let probe = RunConfig {
            n: args.n,
            tau: args.tau,
            variant,
            backend: Backend::GateLevel,
            shots: 1,
        };
        if probe.total_qubits() > MAX_QUBITS {
            return Err(HarnessError::invalid(format!(
                "--dump-circuit needs {} qubits, limit {MAX_QUBITS}",
                probe.total_qubits()
            )));
        }
        let w = WeightVector::zeros(args.n)?;
        let x = InputVector::new(vec![1; args.n])?;
        let built = match variant {
            Variant::A => build_variant_a(&w, &x, args.tau)?,
            Variant::B { delta } => {
                build_variant_b(&quantize_weights(&w, delta)?, &x, args.tau)?
            }
        };
        Some(built.to_string().lines().map(String::from).collect())
    } else {
        None
    };
    let report = GatesReport {
        meta: Meta::seedless("gates"),
        n: args.n,
        tau: args.tau,
        variant: variant_name(args.variant).to_string(),
        delta: args.delta,
        oracle_formula_gates: counts.oracle_formula_gates,
        inverse_qft_formula_gates: counts.inverse_qft_formula_gates,
        constructed_gates: counts.constructed_gates,
        circuit,
    };
    emit(args.out.as_deref(), &report::render_json(&report))
}

/// Parses `args` and runs the selected command, returning the process exit
/// code.
pub fn cli_main(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Run(a) => run_command(a),
        Command::Sweep(a) => sweep_command(a),
        Command::Hist(a) => hist_command(a),
        Command::TauRule(a) => tau_rule_command(a),
        Command::Train(a) => train_command(a),
        Command::Gates(a) => gates_command(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

pub fn run_from_env() -> i32 {
    cli_main(std::env::args().collect())
}
