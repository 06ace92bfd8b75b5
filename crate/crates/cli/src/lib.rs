//! File formats, reports and command dispatch for the `eup` tool.
//!
//! Exit codes: 0 when every check passes, 2 when a check fails (an inequality
//! violation is a finding about the numerics, not an operational error), and
//! 1 for usage, parse, validation and IO errors.

pub mod commands;
pub mod format;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use eup_core::MeasurementKind;

use commands::{CommandError, Context, GroupState};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "eup", version, about = "Entropic uncertainty bounds for quantum measurements")]
pub struct Cli {
    /// Emit a single JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Povm,
    Projective,
}

impl From<Kind> for MeasurementKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Povm => MeasurementKind::Povm,
            Kind::Projective => MeasurementKind::Projective,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a measurement or state document.
    Validate { file: PathBuf },
    /// Outcome distribution and Shannon entropy of a measurement in a state.
    Entropy {
        #[arg(long)]
        meas: PathBuf,
        #[arg(long)]
        state: PathBuf,
    },
    /// Lower bound on H(A) + H(B), or on H(A) alone with --single.
    Bound {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        single: bool,
    },
    /// Write the Naimark dilation of a POVM as a projective measurement.
    Dilate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Random campaign for the state-dependent bound.
    Verify {
        #[arg(long)]
        dim: usize,
        /// Outcome counts of the two measurements, e.g. 4,2.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        outcomes: Vec<usize>,
        /// Kinds of the two measurements, e.g. povm,projective.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        kind: Vec<Kind>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Search for the state minimizing the gap to the bound.
    Search {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Interpolation checks for a pair of projective measurements.
    RtCheck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Position/Fourier entropies on a catalog group.
    Group {
        #[arg(long)]
        name: String,
        /// `uniform`, `delta`, or a state file.
        #[arg(long)]
        state: String,
    },
}

fn two<T: Copy>(values: &[T], flag: &str) -> Result<(T, T), CommandError> {
    match values {
        [a, b] => Ok((*a, *b)),
        _ => Err(CommandError::Usage(format!("--{flag} takes exactly two comma-separated values"))),
    }
}

fn parse_tol(value: Option<&str>) -> Result<f64, CommandError> {
    match value {
        None => Ok(DEFAULT_TOL),
        Some(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(CommandError::Usage(format!("EUP_TOL must be a nonnegative number, got {s:?}"))),
        },
    }
}

fn dispatch(cli: &Cli, ctx: &Context) -> Result<report::Report, CommandError> {
    match &cli.command {
        Command::Validate { file } => commands::validate(ctx, file),
        Command::Entropy { meas, state } => commands::entropy(ctx, meas, state),
        Command::Bound { a, b, state, single } => commands::bound(ctx, a, b.as_deref(), state.as_deref(), *single),
        Command::Dilate { input, output } => commands::dilate_file(ctx, input, output),
        Command::Verify { dim, outcomes, kind, trials, seed } => {
            let outcomes = two(outcomes, "outcomes")?;
            let (k1, k2) = two(kind, "kind")?;
            commands::verify(ctx, *dim, outcomes, (k1.into(), k2.into()), *trials, *seed)
        }
        Command::Search { a, b, restarts, seed } => commands::search(ctx, a, b, *restarts, *seed),
        Command::RtCheck { a, b, state, t, samples, seed } => commands::rt(ctx, a, b, state, *t, *samples, *seed),
        Command::Group { name, state } => commands::group(ctx, name, &GroupState::parse(state)),
    }
}

/// Runs one invocation; `args` includes the program name. Returns the exit code.
pub fn run(args: &[String], tol_env: Option<&str>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let tol = match parse_tol(tol_env) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut command = String::from("eup");
    for a in args.iter().skip(1) {
        command.push(' ');
        command.push_str(a);
    }
    let ctx = Context { command, tol };
    match dispatch(&cli, &ctx) {
        Ok(report) => {
            let text = if cli.json { report.to_json() } else { report.to_human() };
            let _ = write!(out, "{text}");
            if report.passed() {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
