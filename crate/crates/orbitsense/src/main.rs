//! Command-line front end: config-driven experiment runs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orbitsense::config::{ExperimentConfig, ExperimentKind};
use orbitsense::experiment::{run, RunOptions};

#[derive(Parser)]
#[command(
    name = "orbitsense",
    about = "Group-orbit measurement matrices: constants, RIP, counterexamples, recovery experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Parser)]
struct CommonArgs {
    /// Experiment configuration file (key = value sections)
    #[arg(long)]
    config: PathBuf,
    /// Override the master seed from the config
    #[arg(long)]
    seed: Option<u64>,
    /// Write output here instead of the config's `out` (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress the timestamp header and runtime columns for byte-identical reruns
    #[arg(long)]
    no_timestamp: bool,
    /// Worker threads for trial/enumeration parallelism (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suites for the configured group/representation
    Verify(CommonArgs),
    /// Tabulate orbit-column constants over sampled sampling sets
    Constant(CommonArgs),
    /// Enumerate exact restricted isometry constants of a seeded ensemble
    Rip(CommonArgs),
    /// Demonstrate the recovery-failure constructions
    Counterexample(CommonArgs),
    /// Success-rate grid over sparsity and measurement counts
    PhaseTransition(CommonArgs),
    /// Evaluate the measurement-count formulas side by side
    Bound(CommonArgs),
}

impl Command {
    fn kind(&self) -> ExperimentKind {
        match self {
            Command::Verify(_) => ExperimentKind::Verify,
            Command::Constant(_) => ExperimentKind::Constant,
            Command::Rip(_) => ExperimentKind::Rip,
            Command::Counterexample(_) => ExperimentKind::Counterexample,
            Command::PhaseTransition(_) => ExperimentKind::PhaseTransition,
            Command::Bound(_) => ExperimentKind::Bound,
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Verify(a)
            | Command::Constant(a)
            | Command::Rip(a)
            | Command::Counterexample(a)
            | Command::PhaseTransition(a)
            | Command::Bound(a) => a,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = cli.command.args();

    if let Some(threads) = args.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let mut config = match ExperimentConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    // the subcommand wins over the config's experiment kind
    config.kind = cli.command.kind();

    let opts = RunOptions {
        seed: args.seed,
        out: args.out.clone(),
        no_timestamp: args.no_timestamp,
        threads: args.threads,
    };
    match run(config, &opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
