//! Report assembly: one deterministic document per analysis run.
//!
//! The document is JSON-serializable with stable field and team ordering,
//! so identical input plus identical options yields byte-identical output.
//! Every relative frequency is reported with its numerator and denominator.
//! The figure-style tables (goal histogram, per-period venue rates, league
//! and per-team resilience) can also be exported as plot-ready CSV files.

use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::dataset::fit_home_share_trend;
use crate::dataset::{
    theoretical_leeway, Freq, FrequencyTable, LeewayMode, Perspective, TheoreticalLeeway,
    TrendFit, VenueCounts,
};
use crate::resilience::{comeback_prob, resilience_delta, strength_from_trailing};
use crate::scoring::{total_goals_pmf, LeagueParams, TeamShare};

pub const SCHEMA_VERSION: u32 = 1;

/// Analysis switches echoed into the report.
#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub leeway_mode: LeewayMode,
    /// Use venue-compensated rates (instead of pooled ones) for the derived
    /// strength/expected-comeback chain.
    pub compensate: bool,
    pub first_period_len: u16,
    pub period_len: u16,
    /// Restrict team sections to one exact team name.
    pub team_filter: Option<String>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            leeway_mode: LeewayMode::Strict,
            compensate: false,
            first_period_len: 9,
            period_len: 10,
            team_filter: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub metadata: ReportMetadata,
    pub league: LeagueSection,
    pub teams: Vec<ResilienceRow>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ReportMetadata {
    pub tool: String,
    pub version: String,
    pub input_sha256: Option<String>,
    pub config: ConfigEcho,
}

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub leeway_mode: String,
    pub compensate: bool,
    pub periods: String,
    pub team_filter: Option<String>,
}

/// A frequency with its defining counts.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FreqDto {
    pub num: u64,
    pub den: u64,
    pub value: Option<f64>,
}

impl From<Freq> for FreqDto {
    fn from(f: Freq) -> Self {
        FreqDto {
            num: f.num,
            den: f.den,
            value: f.value(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LeagueSection {
    pub matches: u64,
    pub goals: u64,
    pub expected_goals: Option<f64>,
    pub all_time: ResilienceRow,
    pub trend: Option<TrendDto>,
    pub periods: Vec<PeriodRow>,
    pub goal_distribution: Vec<GoalCountRow>,
}

#[derive(Debug, Serialize)]
pub struct TrendDto {
    pub slope_per_decade: f64,
    pub intercept: f64,
    pub vanish_period: Option<String>,
}

impl From<TrendFit> for TrendDto {
    fn from(fit: TrendFit) -> Self {
        TrendDto {
            slope_per_decade: fit.slope_per_decade,
            intercept: fit.intercept,
            vanish_period: fit.vanish_period,
        }
    }
}

/// One bar of the total-goal histogram with its model counterpart.
#[derive(Debug, Serialize)]
pub struct GoalCountRow {
    pub goals: u32,
    pub matches: u64,
    pub frequency: f64,
    pub model: f64,
}

/// Venue-split rates for one season period.
#[derive(Debug, Serialize)]
pub struct PeriodRow {
    pub label: String,
    pub matches: u64,
    pub goals: u64,
    pub expected_goals: Option<f64>,
    pub p_home: FreqDto,
    pub p_away: FreqDto,
    pub first_goal_home: FreqDto,
    pub first_goal_away: FreqDto,
    pub first_goal_neutral: Option<f64>,
    pub leeway_home: FreqDto,
    pub leeway_away: FreqDto,
    pub leeway_neutral: Option<f64>,
    pub comeback_home: FreqDto,
    pub comeback_away: FreqDto,
    pub comeback_neutral: Option<f64>,
    pub expected_comeback: Option<f64>,
    pub model_leeway: Option<ModelLeewayDto>,
}

/// Model-side 0:2-deficit probabilities for one period's parameters.
#[derive(Debug, Serialize)]
pub struct ModelLeewayDto {
    pub share_only_home: f64,
    pub share_only_away: f64,
    pub share_only_neutral: f64,
    pub sequence_home: f64,
    pub sequence_away: f64,
    pub sequence_neutral: f64,
}

impl From<TheoreticalLeeway> for ModelLeewayDto {
    fn from(t: TheoreticalLeeway) -> Self {
        ModelLeewayDto {
            share_only_home: t.share_only_home,
            share_only_away: t.share_only_away,
            share_only_neutral: t.share_only_neutral,
            sequence_home: t.sequence_home,
            sequence_away: t.sequence_away,
            sequence_neutral: t.sequence_neutral,
        }
    }
}

/// Resilience summary for one entity (a team, or the whole league).
///
/// `leeway`/`comeback` are the pooled rates over both venues; the
/// compensated variants average the venue rates instead. The derived chain
/// (strength `p = 1 − √hT`, expected comeback `hT·p²(1+p)`, delta and its
/// binomial error) follows whichever variant the report options selected.
#[derive(Debug, Serialize)]
pub struct ResilienceRow {
    pub name: String,
    pub matches: u64,
    pub leeway_home: FreqDto,
    pub leeway_away: FreqDto,
    pub leeway: FreqDto,
    pub leeway_compensated: Option<f64>,
    pub comeback_home: FreqDto,
    pub comeback_away: FreqDto,
    pub comeback: FreqDto,
    pub comeback_compensated: Option<f64>,
    pub strength: Option<f64>,
    pub expected_comeback: Option<f64>,
    pub delta: Option<f64>,
    pub std_error: Option<f64>,
    pub significant: Option<bool>,
}

/// The strength → expected-comeback → delta chain from observed rates.
#[derive(Default)]
struct DerivedChain {
    strength: Option<f64>,
    expected: Option<f64>,
    delta: Option<f64>,
    std_error: Option<f64>,
    significant: Option<bool>,
}

fn derived_chain(leeway: Option<f64>, comeback: Option<f64>, n_leeways: u64) -> DerivedChain {
    let strength = leeway.and_then(|v| strength_from_trailing(v).ok());
    let expected = match (leeway, strength) {
        (Some(l), Some(s)) => Some(comeback_prob(l, s)),
        _ => None,
    };
    let mut chain = DerivedChain {
        strength: strength.map(TeamShare::value),
        expected,
        ..DerivedChain::default()
    };
    if let (Some(c), Some(e)) = (comeback, expected) {
        let d = resilience_delta(c, e, n_leeways);
        chain.delta = Some(d.delta);
        chain.std_error = Some(d.std_error);
        chain.significant = Some(d.significant());
    }
    chain
}

fn resilience_row(name: &str, counts: &VenueCounts, compensate: bool) -> ResilienceRow {
    let leeway_home = counts.leeway_rate(Perspective::Home);
    let leeway_away = counts.leeway_rate(Perspective::Away);
    let comeback_home = counts.comeback_rate(Perspective::Home);
    let comeback_away = counts.comeback_rate(Perspective::Away);
    let pooled_leeway = counts.pooled_leeway_rate();
    let pooled_comeback = counts.pooled_comeback_rate();
    let leeway_compensated = counts.neutral_leeway_rate();
    let comeback_compensated = counts.neutral_comeback_rate();

    let (headline_leeway, headline_comeback) = if compensate {
        (leeway_compensated, comeback_compensated)
    } else {
        (pooled_leeway.value(), pooled_comeback.value())
    };
    let n_leeways = counts.home.leeways + counts.away.leeways;
    let chain = derived_chain(headline_leeway, headline_comeback, n_leeways);

    ResilienceRow {
        name: name.to_owned(),
        matches: counts.matches(),
        leeway_home: leeway_home.into(),
        leeway_away: leeway_away.into(),
        leeway: pooled_leeway.into(),
        leeway_compensated,
        comeback_home: comeback_home.into(),
        comeback_away: comeback_away.into(),
        comeback: pooled_comeback.into(),
        comeback_compensated,
        strength: chain.strength,
        expected_comeback: chain.expected,
        delta: chain.delta,
        std_error: chain.std_error,
        significant: chain.significant,
    }
}

fn period_row(table: &FrequencyTable, bucket: usize, options: &ReportOptions) -> PeriodRow {
    let counts = &table.league_rows()[bucket];
    let label = table.periods().buckets()[bucket].label.clone();
    let matches = counts.home.matches;
    let goals = counts.goals();
    let first_home = counts.first_goal_rate(Perspective::Home);
    let first_away = counts.first_goal_rate(Perspective::Away);
    let leeway_home = counts.leeway_rate(Perspective::Home);
    let leeway_away = counts.leeway_rate(Perspective::Away);
    let comeback_home = counts.comeback_rate(Perspective::Home);
    let comeback_away = counts.comeback_rate(Perspective::Away);

    let headline_leeway = if options.compensate {
        counts.neutral_leeway_rate()
    } else {
        counts.pooled_leeway_rate().value()
    };
    let headline_comeback = if options.compensate {
        counts.neutral_comeback_rate()
    } else {
        counts.pooled_comeback_rate().value()
    };
    let n_leeways = counts.home.leeways + counts.away.leeways;
    let expected_comeback = derived_chain(headline_leeway, headline_comeback, n_leeways).expected;

    PeriodRow {
        label,
        matches,
        goals,
        expected_goals: (matches > 0).then(|| goals as f64 / matches as f64),
        p_home: counts.goal_share(Perspective::Home).into(),
        p_away: counts.goal_share(Perspective::Away).into(),
        first_goal_home: first_home.into(),
        first_goal_away: first_away.into(),
        first_goal_neutral: counts.neutral_first_goal_rate(),
        leeway_home: leeway_home.into(),
        leeway_away: leeway_away.into(),
        leeway_neutral: counts.neutral_leeway_rate(),
        comeback_home: comeback_home.into(),
        comeback_away: comeback_away.into(),
        comeback_neutral: counts.neutral_comeback_rate(),
        expected_comeback,
        model_leeway: table
            .period_params(bucket)
            .map(|params| theoretical_leeway(params).into()),
    }
}

/// Assembles the full document from a built table.
pub fn build_report(
    table: &FrequencyTable,
    options: &ReportOptions,
    tool_version: &str,
    input_sha256: Option<String>,
    warnings: Vec<String>,
) -> ReportDocument {
    let matches = table.matches();
    let goals = table.goals();
    let league_expected = (matches > 0).then(|| goals as f64 / matches as f64);

    let goal_distribution = league_expected
        .and_then(|e| LeagueParams::neutral(e).ok())
        .map(|params| {
            table
                .goal_histogram()
                .iter()
                .enumerate()
                .map(|(m, &count)| GoalCountRow {
                    goals: m as u32,
                    matches: count,
                    frequency: count as f64 / matches as f64,
                    model: total_goals_pmf(m as u32, params),
                })
                .collect()
        })
        .unwrap_or_default();

    let trend_series: Vec<(f64, f64)> = table
        .league_rows()
        .iter()
        .enumerate()
        .filter_map(|(i, row)| {
            let share = row.goal_share(Perspective::Home).value()?;
            Some((table.periods().buckets()[i].midpoint_year(), share))
        })
        .collect();
    let trend = fit_home_share_trend(&trend_series, table.periods())
        .ok()
        .map(TrendDto::from);

    let periods: Vec<PeriodRow> = (0..table.periods().len())
        .map(|i| period_row(table, i, options))
        .collect();

    let teams: Vec<ResilienceRow> = table
        .teams()
        .filter(|(name, _)| {
            options
                .team_filter
                .as_deref()
                .is_none_or(|filter| *name == filter)
        })
        .map(|(name, _)| {
            let all = table
                .team_all_time(name)
                .expect("iterated team exists in the table");
            resilience_row(name, &all, options.compensate)
        })
        .collect();

    ReportDocument {
        schema_version: SCHEMA_VERSION,
        metadata: ReportMetadata {
            tool: "goalstats".to_owned(),
            version: tool_version.to_owned(),
            input_sha256,
            config: ConfigEcho {
                leeway_mode: match options.leeway_mode {
                    LeewayMode::Strict => "strict".to_owned(),
                    LeewayMode::AnyDeficit => "any-deficit".to_owned(),
                },
                compensate: options.compensate,
                periods: format!("{},{}", options.first_period_len, options.period_len),
                team_filter: options.team_filter.clone(),
            },
        },
        league: LeagueSection {
            matches,
            goals,
            expected_goals: league_expected,
            all_time: resilience_row("ALL", &table.league_all_time(), options.compensate),
            trend,
            periods,
            goal_distribution,
        },
        teams,
        warnings,
    }
}

impl ReportDocument {
    /// Pretty JSON with a trailing newline; byte-stable for fixed inputs.
    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(self).expect("report serialization is infallible");
        out.push('\n');
        out
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_into<W: io::Write>(
    writer: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(header)?;
    for row in rows {
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// Writes the six figure-style tables as CSV files into `dir`, returning
/// the created paths.
pub fn write_figure_csvs(doc: &ReportDocument, dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut emit = |name: &str, header: &[&str], rows: Vec<Vec<String>>| -> io::Result<()> {
        let path = dir.join(name);
        csv_into(std::fs::File::create(&path)?, header, rows)?;
        written.push(path);
        Ok(())
    };

    emit(
        "fig1_goal_distribution.csv",
        &["goals", "matches", "frequency", "model"],
        doc.league
            .goal_distribution
            .iter()
            .map(|r| {
                vec![
                    r.goals.to_string(),
                    r.matches.to_string(),
                    r.frequency.to_string(),
                    r.model.to_string(),
                ]
            })
            .collect(),
    )?;

    emit(
        "fig2_first_goal.csv",
        &[
            "period",
            "matches",
            "p_home",
            "p_away",
            "first_goal_home",
            "first_goal_away",
            "first_goal_neutral",
        ],
        doc.league
            .periods
            .iter()
            .map(|r| {
                vec![
                    r.label.clone(),
                    r.matches.to_string(),
                    fmt_opt(r.p_home.value),
                    fmt_opt(r.p_away.value),
                    fmt_opt(r.first_goal_home.value),
                    fmt_opt(r.first_goal_away.value),
                    fmt_opt(r.first_goal_neutral),
                ]
            })
            .collect(),
    )?;

    emit(
        "fig3_leeway.csv",
        &[
            "period",
            "leeway_home",
            "leeway_away",
            "leeway_neutral",
            "model_share_only_home",
            "model_share_only_away",
            "model_share_only_neutral",
            "model_sequence_home",
            "model_sequence_away",
            "model_sequence_neutral",
        ],
        doc.league
            .periods
            .iter()
            .map(|r| {
                let m = r.model_leeway.as_ref();
                vec![
                    r.label.clone(),
                    fmt_opt(r.leeway_home.value),
                    fmt_opt(r.leeway_away.value),
                    fmt_opt(r.leeway_neutral),
                    fmt_opt(m.map(|m| m.share_only_home)),
                    fmt_opt(m.map(|m| m.share_only_away)),
                    fmt_opt(m.map(|m| m.share_only_neutral)),
                    fmt_opt(m.map(|m| m.sequence_home)),
                    fmt_opt(m.map(|m| m.sequence_away)),
                    fmt_opt(m.map(|m| m.sequence_neutral)),
                ]
            })
            .collect(),
    )?;

    emit(
        "fig4_comeback.csv",
        &[
            "period",
            "leeways_home",
            "leeways_away",
            "comeback_home",
            "comeback_away",
            "comeback_neutral",
            "expected_comeback",
        ],
        doc.league
            .periods
            .iter()
            .map(|r| {
                vec![
                    r.label.clone(),
                    r.comeback_home.den.to_string(),
                    r.comeback_away.den.to_string(),
                    fmt_opt(r.comeback_home.value),
                    fmt_opt(r.comeback_away.value),
                    fmt_opt(r.comeback_neutral),
                    fmt_opt(r.expected_comeback),
                ]
            })
            .collect(),
    )?;

    let resilience_header = [
        "name",
        "matches",
        "leeways",
        "leeway",
        "leeway_compensated",
        "comebacks",
        "comeback",
        "comeback_compensated",
        "strength",
        "expected_comeback",
        "delta",
        "std_error",
        "significant",
    ];
    let resilience_csv_row = |r: &ResilienceRow| {
        vec![
            r.name.clone(),
            r.matches.to_string(),
            r.leeway.num.to_string(),
            fmt_opt(r.leeway.value),
            fmt_opt(r.leeway_compensated),
            r.comeback.num.to_string(),
            fmt_opt(r.comeback.value),
            fmt_opt(r.comeback_compensated),
            fmt_opt(r.strength),
            fmt_opt(r.expected_comeback),
            fmt_opt(r.delta),
            fmt_opt(r.std_error),
            r.significant.map(|s| s.to_string()).unwrap_or_default(),
        ]
    };

    emit(
        "fig5_league.csv",
        &resilience_header,
        vec![resilience_csv_row(&doc.league.all_time)],
    )?;

    emit(
        "fig6_teams.csv",
        &resilience_header,
        doc.teams.iter().map(resilience_csv_row).collect(),
    )?;

    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{build_frequency_table, parse_dataset, ParseMode, PeriodSpec, Season};

    fn sample_table() -> FrequencyTable {
        let csv = "season,matchday,home_team,away_team,goal_sequence\n\
                   1963/64,1,Rot,Blau,AAHHH\n\
                   1963/64,2,Blau,Rot,HH\n\
                   1973/74,1,Rot,Blau,AA\n\
                   1973/74,2,Blau,Rot,\n";
        let records = parse_dataset(csv.as_bytes(), ParseMode::Strict)
            .unwrap()
            .records;
        let periods = PeriodSpec::decades(Season::new(1963), Season::new(1973)).unwrap();
        build_frequency_table(&records, periods, LeewayMode::Strict).unwrap()
    }

    #[test]
    fn report_is_byte_stable() {
        let table = sample_table();
        let options = ReportOptions::default();
        let a = build_report(&table, &options, "0.1.0", Some("abc".into()), vec![]);
        let b = build_report(&table, &options, "0.1.0", Some("abc".into()), vec![]);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn report_carries_counts_for_every_frequency() {
        let table = sample_table();
        let doc = build_report(&table, &ReportOptions::default(), "0.1.0", None, vec![]);
        assert_eq!(doc.league.matches, 4);
        assert_eq!(doc.league.all_time.leeway.den, 8);
        // Rot trailed twice (once at home, once away) and came back once
        let rot = doc.teams.iter().find(|t| t.name == "Rot").unwrap();
        assert_eq!(rot.leeway.num, 3);
        assert_eq!(rot.leeway.den, 4);
        assert_eq!(rot.comeback.num, 1);
        assert_eq!(rot.comeback.den, 3);
    }

    #[test]
    fn team_filter_restricts_sections() {
        let table = sample_table();
        let options = ReportOptions {
            team_filter: Some("Blau".into()),
            ..ReportOptions::default()
        };
        let doc = build_report(&table, &options, "0.1.0", None, vec![]);
        assert_eq!(doc.teams.len(), 1);
        assert_eq!(doc.teams[0].name, "Blau");
    }

    #[test]
    fn figure_csvs_are_written() {
        let table = sample_table();
        let doc = build_report(&table, &ReportOptions::default(), "0.1.0", None, vec![]);
        let dir = tempfile::tempdir().unwrap();
        let files = write_figure_csvs(&doc, dir.path()).unwrap();
        assert_eq!(files.len(), 6);
        let fig1 = std::fs::read_to_string(dir.path().join("fig1_goal_distribution.csv")).unwrap();
        assert!(fig1.starts_with("goals,matches,frequency,model\n"));
        let fig6 = std::fs::read_to_string(dir.path().join("fig6_teams.csv")).unwrap();
        assert!(fig6.lines().count() >= 3, "{fig6}");
    }

    #[test]
    fn compensated_chain_switches_inputs() {
        let table = sample_table();
        let pooled = build_report(&table, &ReportOptions::default(), "0.1.0", None, vec![]);
        let compensated = build_report(
            &table,
            &ReportOptions {
                compensate: true,
                ..ReportOptions::default()
            },
            "0.1.0",
            None,
            vec![],
        );
        // same raw counts either way
        assert_eq!(
            pooled.league.all_time.leeway.num,
            compensated.league.all_time.leeway.num
        );
        assert!(!pooled.metadata.config.compensate);
        assert!(compensated.metadata.config.compensate);
    }
}
