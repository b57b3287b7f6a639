//! Match statistics under an independent-Poisson scoring model.
//!
//! The crate covers four connected jobs:
//!
//! - [`scoring`]: closed-form score, outcome, first-goal and 0:2-deficit
//!   probabilities from a total-goal expectation and a goal share.
//! - [`resilience`]: comeback probabilities after a 0:2 deficit, their
//!   inversions, and the empirical-minus-expected resilience delta, with a
//!   brute-force sequence-model enumeration as the cross-check.
//! - [`dataset`]: CSV ingestion of goal-sequence match records, frequency
//!   tables per team and season period, home-advantage compensation, and
//!   the home-share trend fit.
//! - [`simulator`]: a seedable, stream-splittable Monte Carlo generator of
//!   synthetic corpora in the same CSV format, usable as an independent
//!   oracle for every closed form above.
//!
//! [`matchup`] estimates head-to-head strengths and forecasts, and
//! [`report`] assembles everything into a deterministic JSON/CSV report.

pub mod dataset;
pub mod error;
pub mod matchup;
pub mod report;
pub mod resilience;
pub mod scoring;
pub mod simulator;

pub use error::{Error, Result};
pub use scoring::{LeagueParams, OutcomeProbs, ScoreLine, TeamShare};
