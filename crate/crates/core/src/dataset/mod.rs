//! Match-data ingestion and the empirical frequency tables.
//!
//! A match is stored as its ordered goal-side sequence; everything the
//! analysis needs (final score, first goal, 0:2 deficits, comebacks) is
//! derived from that sequence. Counting is a commutative merge, so record
//! streams can be tallied in independent partitions and combined.

mod parse;
mod periods;
mod table;
mod trend;

pub use parse::{
    parse_dataset, write_dataset_csv, DatasetError, DatasetReader, DatasetWriter, IssueKind,
    ParseMode, ParsedDataset, RowIssue, CSV_HEADER,
};
pub use periods::{PeriodBucket, PeriodSpec, Season};
pub use table::{
    build_frequency_table, expected_goals_from_totals, neutral_rate, season_structure_warnings,
    theoretical_leeway, Freq, FrequencyTable, SideCounts, Tally, TheoreticalLeeway, VenueCounts,
};
pub use trend::{fit_home_share_trend, TrendFit};

use crate::error::{Error, Result};

/// Which side a goal credits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GoalSide {
    Home,
    Away,
}

/// The team whose point of view a statistic takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Perspective {
    Home,
    Away,
}

impl Perspective {
    fn owns(self, goal: GoalSide) -> bool {
        matches!(
            (self, goal),
            (Perspective::Home, GoalSide::Home) | (Perspective::Away, GoalSide::Away)
        )
    }
}

/// What counts as "trailing by two".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeewayMode {
    /// The opponent scored the match's first two goals (0:2 start).
    #[default]
    Strict,
    /// Some prefix of the match has the opponent two or more goals ahead.
    AnyDeficit,
}

/// Final result from one side's perspective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchOutcome {
    Win,
    Draw,
    Loss,
}

/// One match: fixture labels plus the chronological goal sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchRecord {
    season: Season,
    matchday: u32,
    home_team: String,
    away_team: String,
    goal_sequence: Vec<GoalSide>,
}

impl MatchRecord {
    pub fn new(
        season: Season,
        matchday: u32,
        home_team: impl Into<String>,
        away_team: impl Into<String>,
        goal_sequence: Vec<GoalSide>,
    ) -> Result<Self> {
        let home_team = home_team.into();
        let away_team = away_team.into();
        if home_team.is_empty() || away_team.is_empty() {
            return Err(Error::EmptyInput("team names must be non-empty"));
        }
        if home_team == away_team {
            return Err(Error::EmptyInput("a team cannot play itself"));
        }
        if matchday == 0 {
            return Err(Error::EmptyInput("matchday must be positive"));
        }
        Ok(MatchRecord {
            season,
            matchday,
            home_team,
            away_team,
            goal_sequence,
        })
    }

    pub fn season(&self) -> Season {
        self.season
    }

    pub fn matchday(&self) -> u32 {
        self.matchday
    }

    pub fn home_team(&self) -> &str {
        &self.home_team
    }

    pub fn away_team(&self) -> &str {
        &self.away_team
    }

    pub fn team(&self, side: Perspective) -> &str {
        match side {
            Perspective::Home => &self.home_team,
            Perspective::Away => &self.away_team,
        }
    }

    pub fn goal_sequence(&self) -> &[GoalSide] {
        &self.goal_sequence
    }

    pub fn total_goals(&self) -> u32 {
        self.goal_sequence.len() as u32
    }

    pub fn goals_for(&self, side: Perspective) -> u32 {
        self.goal_sequence.iter().filter(|&&g| side.owns(g)).count() as u32
    }

    /// Final score as `(home, away)`.
    pub fn final_score(&self) -> (u32, u32) {
        let home = self.goals_for(Perspective::Home);
        (home, self.total_goals() - home)
    }

    pub fn outcome_for(&self, side: Perspective) -> MatchOutcome {
        let for_goals = self.goals_for(side);
        let against = self.total_goals() - for_goals;
        match for_goals.cmp(&against) {
            std::cmp::Ordering::Greater => MatchOutcome::Win,
            std::cmp::Ordering::Equal => MatchOutcome::Draw,
            std::cmp::Ordering::Less => MatchOutcome::Loss,
        }
    }
}

/// Whether the team on `side` fell two goals behind.
///
/// `Strict` asks for the opponent scoring the match's first two goals;
/// `AnyDeficit` accepts a two-goal gap at any point. A strict deficit is
/// always an any-deficit one.
pub fn detect_leeway02(record: &MatchRecord, side: Perspective, mode: LeewayMode) -> bool {
    let seq = record.goal_sequence();
    match mode {
        LeewayMode::Strict => seq.len() >= 2 && !side.owns(seq[0]) && !side.owns(seq[1]),
        LeewayMode::AnyDeficit => {
            let mut deficit = 0i64;
            for &goal in seq {
                if side.owns(goal) {
                    deficit -= 1;
                } else {
                    deficit += 1;
                }
                if deficit >= 2 {
                    return true;
                }
            }
            false
        }
    }
}

/// Final outcome for a side that trailed by two; win or draw is a comeback.
///
/// Callers must have established the deficit via [`detect_leeway02`];
/// violating that is a bug, not an error.
pub fn classify_after_leeway(record: &MatchRecord, side: Perspective) -> MatchOutcome {
    debug_assert!(
        detect_leeway02(record, side, LeewayMode::AnyDeficit),
        "classify_after_leeway called without a two-goal deficit"
    );
    record.outcome_for(side)
}
