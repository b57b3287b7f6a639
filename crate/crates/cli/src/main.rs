//! `goalstats` — match statistics from goal-sequence data.
//!
//! Subcommands: `analyze` a match CSV into league/team reports, `simulate`
//! a synthetic corpus in the same format, `matchup` for head-to-head
//! forecasts. Exit codes: 0 success, 1 i/o failure, 2 usage or data errors.
//! Set `GOALSTATS_LOG` (e.g. `info`, `warn`) for diagnostics on stderr.

mod analyze;
mod matchup;
mod simulate;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "goalstats",
    version,
    about = "Scoring model, comeback statistics, and a match simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a match CSV into a league/team report
    Analyze(analyze::AnalyzeArgs),
    /// Generate a synthetic match corpus in the ingestible CSV format
    Simulate(simulate::SimulateArgs),
    /// Head-to-head strengths, forecast, and score confidence
    Matchup(matchup::MatchupArgs),
}

/// Command failures carrying their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable input or unwritable output (exit 1).
    Io(String),
    /// Malformed data or unusable parameter combination (exit 2).
    Data(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) | CliError::Data(msg) => f.write_str(msg),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("GOALSTATS_LOG")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => analyze::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::Matchup(args) => matchup::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
