//! `phasecov`: command-line front end for the phase-covariant channel library.
//!
//! Exit status is 0 for an affirmative verdict (or plain success), 1 for a
//! negative verdict, and 2 for usage, input, or parse errors.

mod commands;
mod config;
mod presets;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Verdict;
use crate::config::{ConfigFile, FlagOverrides, RunConfig};
use crate::presets::Preset;

/// Any failure that is the caller's fault; reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<phasecov::Error> for UsageError {
    fn from(e: phasecov::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        Self(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "phasecov", version, about = "Phase-covariant qubit channels, dynamical maps, and their mixtures")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// End of the time window [0, t_max].
    #[arg(long, global = true)]
    t_max: Option<f64>,
    /// Number of grid points (odd, at least 3).
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Verdict tolerance for CP, divisibility and commutativity checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized scans.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write CSV output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// TOML file with t_max, points, tol, singularity, seed, output.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

/// Where a trajectory comes from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TrajectorySource {
    /// A named preset.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Eigenvalue CSV (t,lambda1,lambda3,lambda_star).
    #[arg(long)]
    eigenvalues: Option<PathBuf>,
    /// Rate CSV (t,gamma_plus,gamma_minus,gamma3).
    #[arg(long)]
    rates: Option<PathBuf>,
    /// Constant rates GAMMA_PLUS,GAMMA_MINUS,GAMMA3.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    constant: Option<Vec<f64>>,
    /// Semigroup mixture spec file.
    #[arg(long)]
    semigroup_spec: Option<PathBuf>,
    /// Eta-family mixture spec file.
    #[arg(long)]
    eta_spec: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complete positivity of a single channel.
    CheckCp {
        #[arg(allow_negative_numbers = true)]
        lambda1: f64,
        #[arg(allow_negative_numbers = true)]
        lambda3: f64,
        #[arg(allow_negative_numbers = true)]
        lambda_star: f64,
    },
    /// Eigenvalue trajectory from rates or a preset.
    Evolve {
        #[command(flatten)]
        source: TrajectorySource,
    },
    /// Rates recovered from an eigenvalue CSV.
    Rates {
        /// Eigenvalue CSV.
        input: PathBuf,
    },
    /// Semigroup mixture: eigenvalues, closed-form rates, divisibility.
    MixSemigroups {
        /// Spec file `{weights:[..], rates:[..]}`.
        #[arg(required_unless_present = "preset", conflicts_with = "preset")]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
    },
    /// Eta-family mixture: eigenvalues and invertibility.
    MixEta {
        /// Spec file `{weights:[..], eta:[..]}`.
        #[arg(required_unless_present = "preset", conflicts_with = "preset")]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
    },
    /// CP-divisibility from rate signs or propagator Choi spectra.
    Divisibility {
        #[command(flatten)]
        source: TrajectorySource,
        #[arg(long, value_enum, default_value_t = commands::Method::RateSign)]
        method: commands::Method,
    },
    /// Whether the family commutes at all times.
    Commutativity {
        #[command(flatten)]
        source: TrajectorySource,
    },
    /// Whether a semigroup is a mixture of the three eta-families.
    Recover {
        /// Mixing weights X1,X2,X3.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        weights: Vec<f64>,
        /// Target rates GAMMA_PLUS,GAMMA_MINUS,GAMMA3.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        target: Vec<f64>,
    },
    /// Seeded randomized verification batch.
    Scan {
        /// prop2, cp-choi, roundtrip or covariance.
        kind: phasecov::scan::ScanKind,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn run(cli: Cli) -> Result<Verdict, UsageError> {
    let g = cli.global;
    let file = match &g.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = FlagOverrides { t_max: g.t_max, points: g.points, tol: g.tol, seed: g.seed, output: g.output };
    let cfg = RunConfig::resolve(file, flags)?;
    match cli.command {
        Command::CheckCp { lambda1, lambda3, lambda_star } => commands::check_cp(&cfg, lambda1, lambda3, lambda_star),
        Command::Evolve { source } => commands::evolve(&cfg, &source.into()),
        Command::Rates { input } => commands::rates(&cfg, &input),
        Command::MixSemigroups { spec, preset } => commands::mix_semigroups(&cfg, spec.as_deref(), preset),
        Command::MixEta { spec, preset } => commands::mix_eta(&cfg, spec.as_deref(), preset),
        Command::Divisibility { source, method } => commands::divisibility(&cfg, &source.into(), method),
        Command::Commutativity { source } => commands::commutativity(&cfg, &source.into()),
        Command::Recover { weights, target } => commands::recover(&cfg, &weights, &target),
        Command::Scan { kind, count } => commands::scan(&cfg, kind, count),
    }
}

impl From<TrajectorySource> for commands::Source {
    fn from(s: TrajectorySource) -> Self {
        use commands::Source;
        if let Some(p) = s.preset {
            Source::Preset(p)
        } else if let Some(p) = s.eigenvalues {
            Source::Eigenvalues(p)
        } else if let Some(p) = s.rates {
            Source::Rates(p)
        } else if let Some(c) = s.constant {
            Source::Constant(c)
        } else if let Some(p) = s.semigroup_spec {
            Source::SemigroupSpec(p)
        } else {
            Source::EtaSpec(s.eta_spec.expect("clap enforces one source"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Verdict::Affirmative) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
