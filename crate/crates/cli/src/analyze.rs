//! The `analyze` subcommand: CSV in, deterministic report out.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use sha2::{Digest, Sha256};

use goalstats::dataset::{
    season_structure_warnings, DatasetError, DatasetReader, LeewayMode, PeriodSpec, Tally,
};
use goalstats::report::{build_report, write_figure_csvs, ReportOptions};

use crate::CliError;

/// Issues echoed verbatim into the report before summarizing the rest.
const MAX_REPORTED_ISSUES: usize = 20;

#[derive(Clone, Copy, ValueEnum)]
pub enum LeewayArg {
    /// The opponent scored the match's first two goals
    Strict,
    /// The opponent led by two goals at any point
    Any,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FormatArg {
    /// Single JSON report document
    Json,
    /// One CSV file per figure-style table (needs --output DIR)
    Csv,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Input CSV: season,matchday,home_team,away_team,goal_sequence
    input: PathBuf,

    /// What counts as trailing by two
    #[arg(long, value_enum, default_value_t = LeewayArg::Strict)]
    leeway_mode: LeewayArg,

    /// Derive strengths from venue-compensated rates instead of pooled ones
    #[arg(long)]
    compensate: bool,

    /// Season bucketing: first bucket length, later bucket length
    #[arg(long, default_value = "9,10", value_parser = parse_periods)]
    periods: (u16, u16),

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Restrict team sections to one exact team name
    #[arg(long)]
    team: Option<String>,

    /// JSON report file, or the directory for CSV tables (JSON defaults to stdout)
    #[arg(long)]
    output: Option<PathBuf>,

    /// Skip bad rows with warnings instead of aborting
    #[arg(long)]
    lenient: bool,
}

fn parse_periods(raw: &str) -> Result<(u16, u16), String> {
    let (first, later) = raw
        .split_once(',')
        .ok_or_else(|| format!("expected FIRST,LATER (e.g. 9,10), got `{raw}`"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u16>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| format!("period lengths must be positive integers, got `{s}`"))
    };
    Ok((parse(first)?, parse(later)?))
}

pub fn run(args: AnalyzeArgs) -> Result<(), CliError> {
    let bytes = std::fs::read(&args.input)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.input.display())))?;
    let digest: String = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();

    let reader = DatasetReader::new(bytes.as_slice()).map_err(|e| match e {
        DatasetError::Io(io) => CliError::Io(io.to_string()),
        other => CliError::Data(other.to_string()),
    })?;

    let mode = match args.leeway_mode {
        LeewayArg::Strict => LeewayMode::Strict,
        LeewayArg::Any => LeewayMode::AnyDeficit,
    };
    let mut tally = Tally::new(mode);
    let mut issues = Vec::new();
    for item in reader {
        match item {
            Ok(record) => tally.record(&record),
            Err(issue) => {
                if !args.lenient {
                    return Err(CliError::Data(format!(
                        "{}: {issue} (re-run with --lenient to skip bad rows)",
                        args.input.display()
                    )));
                }
                log::warn!("skipping row: {issue}");
                issues.push(issue);
            }
        }
    }
    let (first_season, last_season) = tally
        .season_range()
        .ok_or_else(|| CliError::Data("dataset contains no usable match rows".into()))?;

    let periods =
        PeriodSpec::with_lengths(first_season, last_season, args.periods.0, args.periods.1)
            .map_err(|e| CliError::Data(e.to_string()))?;
    let table = tally
        .into_table(periods)
        .map_err(|e| CliError::Data(e.to_string()))?;

    let mut warnings: Vec<String> = issues
        .iter()
        .take(MAX_REPORTED_ISSUES)
        .map(|i| format!("skipped row — {i}"))
        .collect();
    if issues.len() > MAX_REPORTED_ISSUES {
        warnings.push(format!(
            "… and {} further skipped rows",
            issues.len() - MAX_REPORTED_ISSUES
        ));
    }
    warnings.extend(season_structure_warnings(table.season_matches()));

    let options = ReportOptions {
        leeway_mode: mode,
        compensate: args.compensate,
        first_period_len: args.periods.0,
        period_len: args.periods.1,
        team_filter: args.team.clone(),
    };
    let doc = build_report(
        &table,
        &options,
        env!("CARGO_PKG_VERSION"),
        Some(digest),
        warnings,
    );

    match args.format {
        FormatArg::Json => {
            let json = doc.to_json();
            match &args.output {
                Some(path) => std::fs::write(path, json)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
                None => {
                    let mut stdout = std::io::stdout().lock();
                    stdout
                        .write_all(json.as_bytes())
                        .map_err(|e| CliError::Io(e.to_string()))?;
                }
            }
        }
        FormatArg::Csv => {
            let dir = args.output.as_ref().ok_or_else(|| {
                CliError::Data("--format csv needs --output DIR for the table files".into())
            })?;
            let written = write_figure_csvs(&doc, dir)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", dir.display())))?;
            for path in written {
                log::info!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}
