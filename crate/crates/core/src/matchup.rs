//! Head-to-head analysis: strength estimates from goal records, outcome
//! forecasts, and a posterior confidence that a score reflects a genuine
//! strength difference.

use crate::error::{Error, Result};
use crate::scoring::{outcome_probabilities, LeagueParams, OutcomeProbs, ScoreLine, TeamShare};

/// Goals scored and conceded over some span of matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeamRecordSummary {
    pub goals_for: u64,
    pub goals_against: u64,
}

impl TeamRecordSummary {
    pub fn new(goals_for: u64, goals_against: u64) -> Self {
        TeamRecordSummary {
            goals_for,
            goals_against,
        }
    }
}

/// Estimates a team's goal-scoring share as `for / (for + against)`.
pub fn share_from_goals(summary: TeamRecordSummary) -> Result<TeamShare> {
    let total = summary.goals_for + summary.goals_against;
    if total == 0 {
        return Err(Error::EmptyInput(
            "share estimate needs at least one goal for or against",
        ));
    }
    TeamShare::new(summary.goals_for as f64 / total as f64)
}

/// Normalizes two independently estimated strengths onto one match:
/// `a / (a + b)` is side A's goal share when A and B meet. Two shares that
/// were estimated against different opposition do not sum to one; this is
/// the step that makes them usable as a head-to-head split.
pub fn pairwise_share(a: TeamShare, b: TeamShare) -> Result<TeamShare> {
    let sum = a.value() + b.value();
    if sum == 0.0 {
        return Err(Error::EmptyInput(
            "pairwise share needs a positive strength on some side",
        ));
    }
    // evaluate the smaller ratio and complement the larger one, so the two
    // orderings of a pair sum to exactly 1
    let share = if a.value() <= b.value() {
        a.value() / sum
    } else {
        1.0 - b.value() / sum
    };
    TeamShare::new(share)
}

/// Win/draw/loss forecast for the side holding `share`; thin wrapper over
/// the score model's outcome summation.
pub fn forecast(params: LeagueParams, share: TeamShare) -> OutcomeProbs {
    outcome_probabilities(params, share)
}

/// Posterior probability that the winner's goal share truly exceeds ½.
///
/// Model: conditional on the total, goals split binomially with an unknown
/// share carrying a uniform prior; a `k:l` score then gives
/// `P(p > ½ | k:l) = 1 − I_{1/2}(k+1, l+1)`, evaluated exactly through the
/// binomial-tail identity as `P(Binomial(k+l+1, ½) ≤ k)`. Dyadic by
/// construction, so small scores come out as exact machine rationals.
/// This is a self-contained estimator; other published score-confidence
/// figures use different models and are not comparable number-for-number.
pub fn dominance_confidence(score: ScoreLine) -> Result<f64> {
    if score.total() == 0 {
        return Err(Error::EmptyInput(
            "dominance confidence needs at least one goal",
        ));
    }
    let k = score.for_goals;
    let n = score.total() + 1;
    // P(Bin(n, 1/2) <= k) with exact integer sums while they fit
    if n <= 126 {
        let mut coeff: u128 = 1;
        let mut acc: u128 = 1;
        for i in 1..=u128::from(k) {
            coeff = coeff * (u128::from(n) - i + 1) / i;
            acc += coeff;
        }
        Ok(acc as f64 / 2f64.powi(n as i32))
    } else {
        // scores this large (k+l > 125) are far outside any real match but
        // still deserve a finite answer
        let mut pmf = 0.5f64.powi(n as i32);
        let mut acc = pmf;
        for i in 1..=k {
            pmf *= f64::from(n - i + 1) / f64::from(i);
            acc += pmf;
        }
        Ok(acc)
    }
}
