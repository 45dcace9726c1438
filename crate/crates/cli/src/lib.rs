//! `ansatz`: evolve expressive circuits, score them, and evaluate them as VQE
//! ansätze. The binary is a thin wrapper over [`run`].
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

pub mod circuit_file;
pub mod commands;
pub mod error;
pub mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "ansatz",
    version,
    about = "Genetic ansatz search and VQE benchmarking"
)]
pub struct Cli {
    /// Master seed; drawn from entropy and recorded in the manifest when unset.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory receiving all artifacts.
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a circuit for minimal expressibility score.
    Evolve(EvolveArgs),
    /// Score a circuit's expressibility.
    Express(ExpressArgs),
    /// Optimise a circuit's parameters against a Hamiltonian.
    Vqe(VqeArgs),
    /// Two-parameter energy landscapes.
    Landscape(LandscapeArgs),
    /// Per-parameter gradient variance.
    Gradvar(GradvarArgs),
    /// Exact ground energy of a Hamiltonian.
    Ground(GroundArgs),
    /// Parameterized / non-parameterized / total gate counts.
    Counts(CountsArgs),
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// TOML file with GA settings (flags override it).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Gate set label A-I, or a custom list such as "RX,RY,CNOT*,+H".
    #[arg(long)]
    gate_set: Option<String>,
    #[arg(long)]
    qubits: Option<usize>,
    /// Single depth ("16"), inclusive range ("1..24") or list ("1,4,8").
    #[arg(long)]
    depth: Option<String>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    generations: Option<usize>,
    #[arg(long)]
    parents: Option<usize>,
    /// Per-gate mutation probability.
    #[arg(long)]
    mutation: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    bins: Option<usize>,
    /// Crossover cut points (1 = single-point).
    #[arg(long)]
    crossover_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExpressArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long, default_value_t = ansatz_core::expressibility::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = ansatz_core::expressibility::DEFAULT_BINS)]
    bins: usize,
}

#[derive(Debug, Args)]
pub struct HamiltonianArgs {
    /// Hamiltonian JSON file.
    #[arg(long, conflicts_with = "tfim")]
    hamiltonian: Option<PathBuf>,
    /// Use an open-chain transverse-field Ising model instead of a file.
    #[arg(long)]
    tfim: bool,
    /// TFIM site count (defaults to the circuit's qubit count).
    #[arg(long)]
    qubits: Option<usize>,
    /// TFIM coupling.
    #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
    coupling: f64,
    /// TFIM transverse field.
    #[arg(long = "h", default_value_t = -0.5, allow_hyphen_values = true)]
    field: f64,
}

#[derive(Debug, Args)]
pub struct VqeArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    ham: HamiltonianArgs,
    #[arg(long, default_value_t = 150)]
    iters: usize,
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
    /// stored | random | zeros
    #[arg(long, default_value = "stored")]
    init: String,
    /// Energy-change threshold for the convergence window.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    ham: HamiltonianArgs,
    /// Parameter pair "i,j"; repeatable.
    #[arg(long = "pair", required = true)]
    pairs: Vec<String>,
    #[arg(long, default_value_t = ansatz_core::analysis::DEFAULT_RESOLUTION)]
    resolution: usize,
}

#[derive(Debug, Args)]
pub struct GradvarArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    ham: HamiltonianArgs,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    #[command(flatten)]
    ham: HamiltonianArgs,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Debug, Args)]
pub struct CountsArgs {
    #[arg(long)]
    circuit: PathBuf,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be ≥ 1".into()));
        }
        ansatz_core::parallel::set_global_threads(t);
    }
    let ctx = commands::Context {
        seed: cli.seed,
        out_dir: cli.out_dir,
    };
    match cli.command {
        Command::Evolve(a) => commands::evolve(&ctx, a),
        Command::Express(a) => commands::express(&ctx, a),
        Command::Vqe(a) => commands::vqe(&ctx, a),
        Command::Landscape(a) => commands::landscape(&ctx, a),
        Command::Gradvar(a) => commands::gradvar(&ctx, a),
        Command::Ground(a) => commands::ground(&ctx, a),
        Command::Counts(a) => commands::counts(&ctx, a),
    }
}
