//! `stackprod`: solve, evaluate and cross-check Stackelberg production games
//! from JSON instance files.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 invalid instance or
//! strategy, 3 oracle disagreement.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod report;

use commands::CheckArgs;
use report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "stackprod",
    version,
    about = "Exact solver for the Stackelberg production game"
)]
struct Cli {
    /// Output format. JSON carries exact fractions only.
    #[arg(long, value_enum, global = true, default_value = "human")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal leader strategy, its value and the prefix scan trace.
    Solve { instance: PathBuf },
    /// The follower's best response to a leader strategy.
    Follower {
        instance: PathBuf,
        /// Leader strategy: `0,7/10,3/10,0,4` or a file holding one.
        #[arg(long)]
        x: String,
    },
    /// Per-facility production and reduction for a strategy pair.
    Evaluate {
        instance: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Compare the solvers against brute-force oracles, on the given instance
    /// or on seeded random ones.
    Check {
        instance: Option<PathBuf>,
        #[arg(long, value_enum)]
        oracle: OracleKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Grid steps per leader budget (grid oracle).
        #[arg(long, default_value_t = 64)]
        resolution: u32,
        /// Largest random instance size.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Write a random valid instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Follower,
    Subset,
    Grid,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Follower => "follower",
            OracleKind::Subset => "subset",
            OracleKind::Grid => "grid",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Validation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Validation(m) => f.write_str(m),
        }
    }
}

impl From<stackprod_core::Error> for CliError {
    fn from(e: stackprod_core::Error) -> Self {
        match e {
            stackprod_core::Error::Parse(m) => CliError::Parse(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn run(cli: &Cli, echo: Vec<String>) -> Result<(Option<report::RunReport>, u8), CliError> {
    let done = |r| Ok((Some(r), 0));
    match &cli.command {
        Command::Solve { instance } => done(commands::cmd_solve(echo, instance)?),
        Command::Follower { instance, x } => done(commands::cmd_follower(echo, instance, x)?),
        Command::Evaluate { instance, x, y } => done(commands::cmd_evaluate(echo, instance, x, y)?),
        Command::Check {
            instance,
            oracle,
            seed,
            trials,
            resolution,
            max_n,
        } => {
            let args = CheckArgs {
                path: instance.as_deref(),
                oracle: *oracle,
                seed: *seed,
                trials: *trials,
                resolution: *resolution,
                max_n: *max_n,
            };
            let (r, code) = commands::cmd_check(echo, &args)?;
            Ok((Some(r), code))
        }
        Command::Generate { n, seed, output } => Ok((commands::cmd_generate(echo, *n, *seed, output.as_ref())?, 0)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let echo: Vec<String> = std::iter::once("stackprod".to_string())
        .chain(std::env::args().skip(1))
        .collect();
    match run(&cli, echo) {
        Ok((report, code)) => {
            if let Some(report) = report {
                print!("{}", report.render(cli.format));
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
