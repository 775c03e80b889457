// `!(x > 0.0)`-style guards are deliberate: they reject NaN where `x <= 0.0`
// would let it through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! `coarse-metrology`: scans and verification runs for phase and frequency
//! estimation under Gaussian-coarsened measurement references.

mod commands;
mod config;
mod output;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use coarse_metrology::verify::DEFAULT_SEED;
use config::{parse_u64, ConfigMap};
use output::OutputFormat;
use std::path::PathBuf;

/// Environment variable that overrides the default sampling seed.
const SEED_ENV: &str = "COARSE_METROLOGY_SEED";

#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or config values: exit 2.
    Usage(String),
    /// A computation or verification failed: exit 1.
    Computation(String),
}

pub struct CommonContext {
    pub config: ConfigMap,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

#[derive(Parser)]
#[command(
    name = "coarse-metrology",
    about = "Phase/frequency estimation limits under Gaussian-coarsened references",
    version
)]
struct Cli {
    /// Plain-text key=value config file; flags win on conflict.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file (stdout when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Output format: csv or json.
    #[arg(long, global = true, value_name = "FORMAT")]
    format: Option<String>,

    /// Sampling seed (also via COARSE_METROLOGY_SEED; flag wins).
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fisher information and phase resolution over an (n, delta, phi) scan.
    PhaseFisher(PhaseFisherArgs),
    /// Optimal probe number for a given reference coarsening spread.
    OptimalN(OptimalNArgs),
    /// The four precision-vs-jitter curves (product/GHZ x Markov/non-Markov).
    FreqCurve(FreqCurveArgs),
    /// Jitter spread where the GHZ probe stops beating the product probe.
    Crossover(CrossoverArgs),
    /// Statevector oracle vs closed forms over the standard grid.
    OracleVerify(OracleVerifyArgs),
    /// Monte-Carlo estimator variance vs the Cramér–Rao bound.
    McVerify(McVerifyArgs),
}

#[derive(Args)]
struct PhaseFisherArgs {
    /// Probe state: ghz, product, or alternating (default ghz).
    #[arg(long)]
    state: Option<String>,
    /// Reference: perfect, common, or independent (default common).
    #[arg(long)]
    reference: Option<String>,
    /// Comma-separated qubit counts.
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated coarsening spreads.
    #[arg(long)]
    delta: Option<String>,
    /// Comma-separated phases; `pi` expressions accepted (e.g. pi/2).
    #[arg(long)]
    phi: Option<String>,
    /// Number of experiments N entering the resolution (default 1).
    #[arg(long)]
    experiments: Option<u64>,
}

#[derive(Args)]
struct OptimalNArgs {
    /// Reference: common or independent.
    #[arg(long)]
    reference: Option<String>,
    /// Coarsening spread (must be > 0).
    #[arg(long)]
    delta: Option<f64>,
    /// Scan cap for the exhaustive argmax (default 1000).
    #[arg(long)]
    n_max: Option<u32>,
    /// Number of experiments N entering the resolution (default 1).
    #[arg(long)]
    experiments: Option<u64>,
}

#[derive(Args)]
struct FreqCurveArgs {
    /// Probe particles (default 10000).
    #[arg(long)]
    n: Option<u64>,
    /// Dephasing rate gamma(0) (default 1).
    #[arg(long)]
    gamma0: Option<f64>,
    /// Total time budget T (default 1).
    #[arg(long)]
    total_time: Option<f64>,
    /// Logarithmic grid points beyond the delta = 0 row (default 60).
    #[arg(long)]
    grid_points: Option<usize>,
    /// Smallest positive grid delta (default 1e-4 of the largest).
    #[arg(long)]
    delta_min: Option<f64>,
    /// Largest grid delta (default 4 x product-probe interrogation time).
    #[arg(long)]
    delta_max: Option<f64>,
    /// Emit an extra display-scaled GHZ-Markov column (e.g. 1e-8).
    #[arg(long)]
    scale_ghz_markov: Option<f64>,
}

#[derive(Args)]
struct CrossoverArgs {
    /// Dephasing model: markov or nonmarkov.
    #[arg(long)]
    model: Option<String>,
    /// Probe particles (default 10000).
    #[arg(long)]
    n: Option<u64>,
    /// Dephasing rate gamma(0) (default 1).
    #[arg(long)]
    gamma0: Option<f64>,
    /// Total time budget T (default 1).
    #[arg(long)]
    total_time: Option<f64>,
    /// Bracket lower edge (default 0).
    #[arg(long)]
    bracket_lo: Option<f64>,
    /// Bracket upper edge (default 4 x product-probe interrogation time).
    #[arg(long)]
    bracket_hi: Option<f64>,
}

#[derive(Args)]
struct OracleVerifyArgs {
    /// Largest qubit count of the grid (cap 12, default 8).
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated coarsening spreads (default 0,0.1,0.3).
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args)]
struct McVerifyArgs {
    /// Shots per estimate (>= 10000, default 100000).
    #[arg(long)]
    shots: Option<u64>,
    /// Estimator repetitions (>= 100, default 200).
    #[arg(long)]
    reps: Option<u64>,
}

fn resolve_context(cli: &Cli) -> Result<CommonContext, CliError> {
    let config = ConfigMap::load(cli.config.as_ref())?;
    let format = match &cli.format {
        Some(s) => OutputFormat::parse(s)?,
        None => match config.get("format") {
            Some(s) => OutputFormat::parse(s)?,
            None => OutputFormat::Csv,
        },
    };
    let output = cli
        .output
        .clone()
        .or_else(|| config.get("output").map(PathBuf::from));
    let seed = match cli.seed {
        Some(seed) => seed,
        None => match std::env::var(SEED_ENV) {
            Ok(raw) => parse_u64(&raw)
                .map_err(|_| CliError::Usage(format!("{SEED_ENV} is not an integer: '{raw}'")))?,
            Err(_) => match config.get("seed") {
                Some(raw) => parse_u64(raw)?,
                None => DEFAULT_SEED,
            },
        },
    };
    Ok(CommonContext {
        config,
        format,
        output,
        seed,
    })
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let ctx = resolve_context(cli)?;
    match &cli.command {
        Command::PhaseFisher(args) => commands::phase_fisher(
            &commands::PhaseFisherParams {
                state: args.state.clone(),
                reference: args.reference.clone(),
                n: args.n.clone(),
                delta: args.delta.clone(),
                phi: args.phi.clone(),
                experiments: args.experiments,
            },
            &ctx,
        ),
        Command::OptimalN(args) => commands::optimal_n(
            &commands::OptimalNParams {
                reference: args.reference.clone(),
                delta: args.delta,
                n_max: args.n_max,
                experiments: args.experiments,
            },
            &ctx,
        ),
        Command::FreqCurve(args) => commands::freq_curve(
            &commands::FreqCurveParams {
                n: args.n,
                gamma0: args.gamma0,
                total_time: args.total_time,
                grid_points: args.grid_points,
                delta_min: args.delta_min,
                delta_max: args.delta_max,
                scale_ghz_markov: args.scale_ghz_markov,
            },
            &ctx,
        ),
        Command::Crossover(args) => commands::crossover(
            &commands::CrossoverParams {
                model: args.model.clone(),
                n: args.n,
                gamma0: args.gamma0,
                total_time: args.total_time,
                bracket_lo: args.bracket_lo,
                bracket_hi: args.bracket_hi,
            },
            &ctx,
        ),
        Command::OracleVerify(args) => commands::oracle_verify(
            &commands::OracleVerifyParams {
                n: args.n,
                delta: args.delta.clone(),
            },
            &ctx,
        ),
        Command::McVerify(args) => commands::mc_verify(
            &commands::McVerifyParams {
                shots: args.shots,
                repetitions: args.reps,
            },
            &ctx,
        ),
    }
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            2
        }
        Err(CliError::Computation(message)) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn main() {
    // The exit-code contract says no panic ever reaches the shell.
    let code = std::panic::catch_unwind(run).unwrap_or_else(|_| {
        eprintln!("error: internal panic");
        1
    });
    std::process::exit(code);
}
