//! Frequency counting over match records.
//!
//! Every match contributes two perspective rows: one for the home team and
//! one for the away team. Counts accumulate per team × season inside
//! [`Tally`] (a commutative merge, so partitioned streams combine freely)
//! and collapse into season-period buckets when the table is built.

use std::collections::BTreeMap;

use super::{
    classify_after_leeway, detect_leeway02, GoalSide, LeewayMode, MatchOutcome, MatchRecord,
    PeriodSpec, Perspective, Season,
};
use crate::error::{Error, Result};
use crate::scoring::{strict_leeway_prob, LeagueParams, TeamShare};

/// A relative frequency kept as its defining ratio so reports can carry
/// numerator and denominator alongside the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Freq {
    pub num: u64,
    pub den: u64,
}

impl Freq {
    pub fn new(num: u64, den: u64) -> Self {
        Freq { num, den }
    }

    /// `None` when the denominator is empty (frequency undefined/absent).
    pub fn value(self) -> Option<f64> {
        (self.den > 0).then(|| self.num as f64 / self.den as f64)
    }
}

/// Home-advantage compensation of one statistic, as if the games had been
/// played on neutral ground: the plain mean of the two venue frequencies
/// when the venue exposures (matches played home and away) balance, their
/// exposure-weighted mean when they do not. The weights are always the
/// match counts, never the statistic's own denominator — for conditional
/// rates like the post-deficit comeback frequency this is what separates
/// compensation from mere pooling. Absent inputs propagate as absent;
/// equal inputs pass through unchanged, which makes the operation
/// idempotent.
pub fn neutral_rate(home: Freq, away: Freq, home_matches: u64, away_matches: u64) -> Option<f64> {
    let (h, a) = (home.value()?, away.value()?);
    if home_matches == away_matches {
        Some((h + a) / 2.0)
    } else {
        let (wh, wa) = (home_matches as f64, away_matches as f64);
        Some((wh * h + wa * a) / (wh + wa))
    }
}

/// Counts from one venue perspective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SideCounts {
    pub matches: u64,
    /// Matches in which this side fell two goals behind.
    pub leeways: u64,
    /// Of those, matches this side still won or drew.
    pub comebacks: u64,
    pub first_goal_conceded: u64,
    pub goals_for: u64,
    pub goals_against: u64,
}

impl SideCounts {
    fn absorb(&mut self, other: &SideCounts) {
        self.matches += other.matches;
        self.leeways += other.leeways;
        self.comebacks += other.comebacks;
        self.first_goal_conceded += other.first_goal_conceded;
        self.goals_for += other.goals_for;
        self.goals_against += other.goals_against;
    }
}

/// Both perspectives of one key (team or league) over some span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VenueCounts {
    pub home: SideCounts,
    pub away: SideCounts,
}

impl VenueCounts {
    pub fn absorb(&mut self, other: &VenueCounts) {
        self.home.absorb(&other.home);
        self.away.absorb(&other.away);
    }

    fn side(&self, side: Perspective) -> &SideCounts {
        match side {
            Perspective::Home => &self.home,
            Perspective::Away => &self.away,
        }
    }

    pub fn matches(&self) -> u64 {
        self.home.matches + self.away.matches
    }

    pub fn goals(&self) -> u64 {
        self.home.goals_for + self.away.goals_for
    }

    /// hT(0,2) for one venue: deficits per match played there.
    pub fn leeway_rate(&self, side: Perspective) -> Freq {
        let s = self.side(side);
        Freq::new(s.leeways, s.matches)
    }

    /// h(win or draw) for one venue: comebacks per deficit suffered there.
    pub fn comeback_rate(&self, side: Perspective) -> Freq {
        let s = self.side(side);
        Freq::new(s.comebacks, s.leeways)
    }

    /// hT(0,1) for one venue: first goals conceded per match played there.
    pub fn first_goal_rate(&self, side: Perspective) -> Freq {
        let s = self.side(side);
        Freq::new(s.first_goal_conceded, s.matches)
    }

    /// Share of goals scored (vs conceded) at one venue; for the league's
    /// home perspective this is p_home.
    pub fn goal_share(&self, side: Perspective) -> Freq {
        let s = self.side(side);
        Freq::new(s.goals_for, s.goals_for + s.goals_against)
    }

    pub fn pooled_leeway_rate(&self) -> Freq {
        Freq::new(
            self.home.leeways + self.away.leeways,
            self.home.matches + self.away.matches,
        )
    }

    pub fn pooled_comeback_rate(&self) -> Freq {
        Freq::new(
            self.home.comebacks + self.away.comebacks,
            self.home.leeways + self.away.leeways,
        )
    }

    pub fn pooled_first_goal_rate(&self) -> Freq {
        Freq::new(
            self.home.first_goal_conceded + self.away.first_goal_conceded,
            self.home.matches + self.away.matches,
        )
    }

    fn neutralized(&self, home: Freq, away: Freq) -> Option<f64> {
        neutral_rate(home, away, self.home.matches, self.away.matches)
    }

    pub fn neutral_leeway_rate(&self) -> Option<f64> {
        self.neutralized(
            self.leeway_rate(Perspective::Home),
            self.leeway_rate(Perspective::Away),
        )
    }

    pub fn neutral_comeback_rate(&self) -> Option<f64> {
        self.neutralized(
            self.comeback_rate(Perspective::Home),
            self.comeback_rate(Perspective::Away),
        )
    }

    pub fn neutral_first_goal_rate(&self) -> Option<f64> {
        self.neutralized(
            self.first_goal_rate(Perspective::Home),
            self.first_goal_rate(Perspective::Away),
        )
    }
}

/// Streaming accumulator keyed by team × season; merge-friendly.
#[derive(Debug, Default)]
pub struct Tally {
    mode: LeewayMode,
    league: BTreeMap<Season, VenueCounts>,
    teams: BTreeMap<String, BTreeMap<Season, VenueCounts>>,
    goal_histogram: Vec<u64>,
    season_matches: BTreeMap<Season, u64>,
}

impl Tally {
    pub fn new(mode: LeewayMode) -> Self {
        Tally {
            mode,
            ..Tally::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.league.is_empty()
    }

    pub fn season_range(&self) -> Option<(Season, Season)> {
        let first = *self.league.keys().next()?;
        let last = *self.league.keys().next_back()?;
        Some((first, last))
    }

    pub fn record(&mut self, record: &MatchRecord) {
        let season = record.season();
        let (home_goals, away_goals) = record.final_score();
        let first_goal = record.goal_sequence().first().copied();

        let side_counts = |side: Perspective| {
            let leeway = detect_leeway02(record, side, self.mode);
            let comeback = leeway
                && matches!(
                    classify_after_leeway(record, side),
                    MatchOutcome::Win | MatchOutcome::Draw
                );
            let (goals_for, goals_against) = match side {
                Perspective::Home => (home_goals, away_goals),
                Perspective::Away => (away_goals, home_goals),
            };
            let conceded_first = match (side, first_goal) {
                (Perspective::Home, Some(GoalSide::Away)) => 1,
                (Perspective::Away, Some(GoalSide::Home)) => 1,
                _ => 0,
            };
            SideCounts {
                matches: 1,
                leeways: leeway as u64,
                comebacks: comeback as u64,
                first_goal_conceded: conceded_first,
                goals_for: u64::from(goals_for),
                goals_against: u64::from(goals_against),
            }
        };
        let home_row = side_counts(Perspective::Home);
        let away_row = side_counts(Perspective::Away);

        let league = self.league.entry(season).or_default();
        league.home.absorb(&home_row);
        league.away.absorb(&away_row);

        self.teams
            .entry(record.home_team().to_owned())
            .or_default()
            .entry(season)
            .or_default()
            .home
            .absorb(&home_row);
        self.teams
            .entry(record.away_team().to_owned())
            .or_default()
            .entry(season)
            .or_default()
            .away
            .absorb(&away_row);

        let total = record.total_goals() as usize;
        if self.goal_histogram.len() <= total {
            self.goal_histogram.resize(total + 1, 0);
        }
        self.goal_histogram[total] += 1;
        *self.season_matches.entry(season).or_default() += 1;
    }

    /// Combines two independently built tallies (modes must match).
    pub fn merge(mut self, other: Tally) -> Tally {
        assert_eq!(
            self.mode, other.mode,
            "cannot merge tallies of different modes"
        );
        for (season, counts) in other.league {
            self.league.entry(season).or_default().absorb(&counts);
        }
        for (team, seasons) in other.teams {
            let into = self.teams.entry(team).or_default();
            for (season, counts) in seasons {
                into.entry(season).or_default().absorb(&counts);
            }
        }
        if self.goal_histogram.len() < other.goal_histogram.len() {
            self.goal_histogram.resize(other.goal_histogram.len(), 0);
        }
        for (i, n) in other.goal_histogram.iter().enumerate() {
            self.goal_histogram[i] += n;
        }
        for (season, n) in other.season_matches {
            *self.season_matches.entry(season).or_default() += n;
        }
        self
    }

    /// Collapses seasons into the given buckets. Every tallied season must
    /// fall inside a bucket.
    pub fn into_table(self, periods: PeriodSpec) -> Result<FrequencyTable> {
        let n = periods.len();
        let bucket_of = |season: Season| {
            periods
                .index_of(season)
                .ok_or_else(|| Error::SeasonOutsidePeriods(season.to_string()))
        };

        let mut league = vec![VenueCounts::default(); n];
        for (season, counts) in &self.league {
            league[bucket_of(*season)?].absorb(counts);
        }
        let mut teams = BTreeMap::new();
        for (team, seasons) in self.teams {
            let rows: &mut Vec<VenueCounts> = teams
                .entry(team)
                .or_insert_with(|| vec![VenueCounts::default(); n]);
            for (season, counts) in seasons {
                rows[bucket_of(season)?].absorb(&counts);
            }
        }
        Ok(FrequencyTable {
            mode: self.mode,
            periods,
            league,
            teams,
            goal_histogram: self.goal_histogram,
            season_matches: self.season_matches,
        })
    }
}

/// Per-team and league-wide counts aggregated into season periods, plus the
/// total-goal histogram and per-season match counts gathered on the way.
#[derive(Debug)]
pub struct FrequencyTable {
    mode: LeewayMode,
    periods: PeriodSpec,
    league: Vec<VenueCounts>,
    teams: BTreeMap<String, Vec<VenueCounts>>,
    goal_histogram: Vec<u64>,
    season_matches: BTreeMap<Season, u64>,
}

impl FrequencyTable {
    pub fn mode(&self) -> LeewayMode {
        self.mode
    }

    pub fn periods(&self) -> &PeriodSpec {
        &self.periods
    }

    /// League row per period bucket, aligned with `periods()`.
    pub fn league_rows(&self) -> &[VenueCounts] {
        &self.league
    }

    pub fn league_all_time(&self) -> VenueCounts {
        let mut all = VenueCounts::default();
        for row in &self.league {
            all.absorb(row);
        }
        all
    }

    pub fn teams(&self) -> impl Iterator<Item = (&str, &[VenueCounts])> {
        self.teams.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn team_all_time(&self, team: &str) -> Option<VenueCounts> {
        let rows = self.teams.get(team)?;
        let mut all = VenueCounts::default();
        for row in rows {
            all.absorb(row);
        }
        Some(all)
    }

    /// Matches counted per total-goal tally `m` (index = m).
    pub fn goal_histogram(&self) -> &[u64] {
        &self.goal_histogram
    }

    pub fn season_matches(&self) -> &BTreeMap<Season, u64> {
        &self.season_matches
    }

    pub fn matches(&self) -> u64 {
        self.league.iter().map(|r| r.home.matches).sum()
    }

    pub fn goals(&self) -> u64 {
        self.league.iter().map(VenueCounts::goals).sum()
    }

    /// League scoring parameters for one period bucket, if it has matches.
    pub fn period_params(&self, bucket: usize) -> Option<LeagueParams> {
        let row = self.league.get(bucket)?;
        if row.home.matches == 0 {
            return None;
        }
        let expected = row.goals() as f64 / row.home.matches as f64;
        let home_share = row.goal_share(Perspective::Home).value()?;
        Some(
            LeagueParams::new(expected, TeamShare::new(home_share).ok()?)
                .expect("counts yield finite non-negative expectations"),
        )
    }
}

/// Builds the table in one go from an in-memory record list.
pub fn build_frequency_table<'a, I>(
    records: I,
    periods: PeriodSpec,
    mode: LeewayMode,
) -> Result<FrequencyTable>
where
    I: IntoIterator<Item = &'a MatchRecord>,
{
    let mut tally = Tally::new(mode);
    let mut any = false;
    for record in records {
        tally.record(record);
        any = true;
    }
    if !any {
        return Err(Error::EmptyInput("no match records to tabulate"));
    }
    tally.into_table(periods)
}

/// Goals per match.
pub fn expected_goals_from_totals(goals: u64, matches: u64) -> Result<f64> {
    if matches == 0 {
        return Err(Error::EmptyInput("expected goals need at least one match"));
    }
    Ok(goals as f64 / matches as f64)
}

/// Historical league sizes; seasons with other match counts get a warn-only
/// note (league size varied, so this never fails ingestion).
const KNOWN_SEASON_SIZES: [u64; 3] = [240, 306, 380];

pub fn season_structure_warnings(season_matches: &BTreeMap<Season, u64>) -> Vec<String> {
    season_matches
        .iter()
        .filter(|(_, &n)| !KNOWN_SEASON_SIZES.contains(&n))
        .map(|(season, n)| format!("season {season} has {n} matches (expected one of 240/306/380)"))
        .collect()
}

/// Model-side counterpart of the empirical 0:2-deficit rates for one
/// period's league parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoreticalLeeway {
    /// `(1−p)²` forms: probability that the first two goals go the other way.
    pub share_only_home: f64,
    pub share_only_away: f64,
    pub share_only_neutral: f64,
    /// Sequence-exact forms including the chance that two goals fall at all.
    pub sequence_home: f64,
    pub sequence_away: f64,
    pub sequence_neutral: f64,
}

pub fn theoretical_leeway(params: LeagueParams) -> TheoreticalLeeway {
    let home = params.home_share();
    let away = params.away_share();
    let share_only = |p: TeamShare| {
        let q = p.complement().value();
        q * q
    };
    let (eq_home, eq_away) = (share_only(home), share_only(away));
    let (seq_home, seq_away) = (
        strict_leeway_prob(params, home),
        strict_leeway_prob(params, away),
    );
    TheoreticalLeeway {
        share_only_home: eq_home,
        share_only_away: eq_away,
        share_only_neutral: (eq_home + eq_away) / 2.0,
        sequence_home: seq_home,
        sequence_away: seq_away,
        sequence_neutral: (seq_home + seq_away) / 2.0,
    }
}
