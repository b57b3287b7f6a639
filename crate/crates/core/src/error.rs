//! Crate-wide error type.

use crate::dataset::DatasetError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{name} must lie in [0, 1], got {value}")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    #[error("expected goals must be finite and non-negative, got {0}")]
    InvalidExpectedGoals(f64),

    #[error("home and away shares must sum to 1, got {home} + {away}")]
    UnbalancedShares { home: f64, away: f64 },

    #[error("side goals ({goals}) exceed the match total ({total})")]
    GoalsExceedTotal { goals: u32, total: u32 },

    #[error("no solution: target {target} exceeds the attainable maximum {max}")]
    NoSolution { target: f64, max: f64 },

    #[error("{0}")]
    EmptyInput(&'static str),

    #[error("trend fit needs at least two points with distinct x values")]
    DegenerateTrend,

    #[error("season {0} falls outside the configured periods")]
    SeasonOutsidePeriods(String),

    #[error(transparent)]
    Dataset(#[from] DatasetError),
}
