//! The `simulate` subcommand: stream a synthetic corpus to CSV.

use std::io::Write;
use std::path::PathBuf;

use clap::Args;

use goalstats::dataset::{DatasetWriter, LeewayMode, Tally};
use goalstats::scoring::TeamShare;
use goalstats::simulator::{SimConfig, Simulator, TeamRating};

use crate::CliError;

#[derive(Args)]
pub struct SimulateArgs {
    /// Number of matches to generate
    #[arg(long, default_value_t = 1000)]
    matches: u64,

    /// Expected total goals per match
    #[arg(long, default_value_t = 3.1)]
    expected_goals: f64,

    /// Goal share of the home side
    #[arg(long, default_value_t = 0.5)]
    home_share: f64,

    /// Share a side adopts once it strictly trails 0:2
    #[arg(long)]
    boost: Option<f64>,

    /// Master seed; per-match generators derive from it by stream id
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,

    /// Named teams with strengths, e.g. "Adler=0.6,Bergfalken=0.5"
    #[arg(long, value_parser = parse_team_pool)]
    team_pool: Option<TeamPoolArg>,
}

// newtype keeps clap from treating the Vec as repeated occurrences
#[derive(Clone)]
struct TeamPoolArg(Vec<TeamRating>);

fn parse_team_pool(raw: &str) -> Result<TeamPoolArg, String> {
    raw.split(',')
        .map(|entry| {
            let (name, share) = entry
                .split_once('=')
                .ok_or_else(|| format!("expected NAME=SHARE, got `{entry}`"))?;
            let share = share
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("bad share in `{entry}`: {e}"))?;
            Ok(TeamRating {
                name: name.trim().to_owned(),
                share: TeamShare::new(share).map_err(|e| e.to_string())?,
            })
        })
        .collect::<Result<_, _>>()
        .map(TeamPoolArg)
}

fn share_arg(value: f64, what: &str) -> Result<TeamShare, CliError> {
    TeamShare::new(value)
        .map_err(|_| CliError::Data(format!("{what} must lie in [0, 1], got {value}")))
}

pub fn run(args: SimulateArgs) -> Result<(), CliError> {
    let config = SimConfig {
        expected_goals: args.expected_goals,
        home_share: share_arg(args.home_share, "--home-share")?,
        resilience_boost: args.boost.map(|b| share_arg(b, "--boost")).transpose()?,
        n_matches: args.matches,
        seed: args.seed,
        team_pool: args.team_pool.clone().map(|pool| pool.0),
    };
    let sim = Simulator::new(config).map_err(|e| CliError::Data(e.to_string()))?;

    let sink: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let io_err = |e: goalstats::dataset::DatasetError| CliError::Io(e.to_string());
    let mut writer = DatasetWriter::new(sink).map_err(io_err)?;

    let mut tally = Tally::new(LeewayMode::Strict);
    for record in sim.iter() {
        writer.write(&record).map_err(io_err)?;
        tally.record(&record);
    }
    writer.flush().map_err(io_err)?;

    // summary on stderr so the CSV stream stays clean
    let (first, last) = tally.season_range().expect("at least one match generated");
    let table = tally
        .into_table(goalstats::dataset::PeriodSpec::decades(first, last).unwrap())
        .expect("synthesized seasons always fall inside their periods");
    let all = table.league_all_time();
    let leeways = all.home.leeways + all.away.leeways;
    let comebacks = all.home.comebacks + all.away.comebacks;
    eprintln!(
        "simulated {} matches, {} goals (E = {:.4})",
        table.matches(),
        table.goals(),
        table.goals() as f64 / table.matches() as f64,
    );
    eprintln!(
        "strict 0:2 deficits: {} ({:.4} per perspective row); comebacks: {} ({})",
        leeways,
        leeways as f64 / (2.0 * table.matches() as f64),
        comebacks,
        if leeways > 0 {
            format!("{:.4} of deficits", comebacks as f64 / leeways as f64)
        } else {
            "no deficits".to_owned()
        },
    );
    Ok(())
}
