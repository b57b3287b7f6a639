//! Closed-form probabilities of the independent-Poisson score model.
//!
//! A match between two teams is modelled as a Poisson number of total goals
//! with expectation `E`, each goal independently credited to one side with a
//! fixed share `p`. Equivalently, the two sides score independent Poisson
//! counts with means `p·E` and `(1−p)·E`; the joint score probability
//! factorizes into a binomial conditional `p(k | m)` times the total-goal
//! Poisson `p(m)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tail mass below which infinite sums over total goals are truncated.
pub const TAIL_EPSILON: f64 = 1e-12;

/// Largest total-goal count evaluated with plain products; beyond this the
/// pmf switches to log-space to dodge factorial overflow.
const EXACT_EVAL_LIMIT: u32 = 20;

/// Largest `m` for which binomial coefficients are taken exactly from
/// integer arithmetic (C(50,25) ≈ 1.3e14 still fits an f64 mantissa).
const EXACT_BINOMIAL_LIMIT: u32 = 50;

/// A goal-scoring share `p ∈ [0, 1]`: the fraction of a match's goals
/// expected to go to one team. Doubles as the relative team strength.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TeamShare(f64);

impl TeamShare {
    /// Equal strength on neutral ground.
    pub const EVEN: TeamShare = TeamShare(0.5);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(TeamShare(value))
        } else {
            Err(Error::ProbabilityOutOfRange {
                name: "team share",
                value,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The opposing side's share, `1 − p`.
    pub fn complement(self) -> TeamShare {
        TeamShare(1.0 - self.0)
    }
}

impl fmt::Display for TeamShare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// League-level scoring parameters: expected total goals per match and the
/// home side's goal share (the away share is its complement).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeagueParams {
    expected_goals: f64,
    home_share: TeamShare,
}

impl LeagueParams {
    pub fn new(expected_goals: f64, home_share: TeamShare) -> Result<Self> {
        if !expected_goals.is_finite() || expected_goals < 0.0 {
            return Err(Error::InvalidExpectedGoals(expected_goals));
        }
        Ok(LeagueParams {
            expected_goals,
            home_share,
        })
    }

    /// Builds from both shares, enforcing `home + away = 1` within 1e-12.
    pub fn with_shares(expected_goals: f64, home: f64, away: f64) -> Result<Self> {
        if (home + away - 1.0).abs() > 1e-12 {
            return Err(Error::UnbalancedShares { home, away });
        }
        Self::new(expected_goals, TeamShare::new(home)?)
    }

    /// No home advantage: both sides share goals evenly.
    pub fn neutral(expected_goals: f64) -> Result<Self> {
        Self::new(expected_goals, TeamShare::EVEN)
    }

    pub fn expected_goals(self) -> f64 {
        self.expected_goals
    }

    pub fn home_share(self) -> TeamShare {
        self.home_share
    }

    pub fn away_share(self) -> TeamShare {
        self.home_share.complement()
    }
}

/// A score line from one team's perspective: `for_goals : against_goals`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreLine {
    pub for_goals: u32,
    pub against_goals: u32,
}

impl ScoreLine {
    pub fn new(for_goals: u32, against_goals: u32) -> Self {
        ScoreLine {
            for_goals,
            against_goals,
        }
    }

    pub fn total(self) -> u32 {
        self.for_goals + self.against_goals
    }
}

impl fmt::Display for ScoreLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.for_goals, self.against_goals)
    }
}

impl FromStr for ScoreLine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (k, l) = s
            .split_once(':')
            .ok_or_else(|| format!("expected `k:l`, got `{s}`"))?;
        let parse = |part: &str| {
            part.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad goal count `{part}`: {e}"))
        };
        Ok(ScoreLine::new(parse(k)?, parse(l)?))
    }
}

/// Win/draw/loss probabilities from one team's perspective.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct OutcomeProbs {
    pub win: f64,
    pub draw: f64,
    pub loss: f64,
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| f64::from(i).ln()).sum()
}

/// Exact binomial coefficient as f64; caller guarantees `m <= 50`.
fn binomial_coefficient(m: u32, k: u32) -> f64 {
    debug_assert!(k <= m && m <= EXACT_BINOMIAL_LIMIT);
    let k = k.min(m - k) as u128;
    let m = m as u128;
    let mut c: u128 = 1;
    for i in 1..=k {
        // exact at every step: c * (m - k + i) is divisible by i
        c = c * (m - k + i) / i;
    }
    c as f64
}

/// Probability that a match totals exactly `total` goals: `E^m e^{−E} / m!`.
///
/// Evaluated with plain products for small `total` and in log-space beyond
/// m = 20. `E = 0` degenerates to a point mass at zero goals.
pub fn total_goals_pmf(total: u32, params: LeagueParams) -> f64 {
    let e = params.expected_goals();
    if e == 0.0 {
        return if total == 0 { 1.0 } else { 0.0 };
    }
    if total <= EXACT_EVAL_LIMIT {
        let mut value = (-e).exp();
        for i in 1..=total {
            value *= e / f64::from(i);
        }
        value
    } else {
        (f64::from(total) * e.ln() - e - ln_factorial(total)).exp()
    }
}

/// Probability of scoring `goals_for` of `total` goals when each goal falls
/// to this team with probability `share`: `C(m,k) p^k (1−p)^{m−k}`.
pub fn conditional_score_pmf(goals_for: u32, total: u32, share: TeamShare) -> Result<f64> {
    if goals_for > total {
        return Err(Error::GoalsExceedTotal {
            goals: goals_for,
            total,
        });
    }
    let p = share.value();
    if p == 0.0 {
        return Ok(if goals_for == 0 { 1.0 } else { 0.0 });
    }
    if p == 1.0 {
        return Ok(if goals_for == total { 1.0 } else { 0.0 });
    }
    let q = 1.0 - p;
    let against = total - goals_for;
    // combine the two power factors in an order invariant under the mirror
    // (k, p) ↔ (m−k, 1−p), so cond(k, m, p) and cond(m−k, m, 1−p) round
    // identically whenever 1−p is exact
    let mirror_swap = match goals_for.cmp(&against) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => p > q,
    };
    let value = if total <= EXACT_BINOMIAL_LIMIT {
        let coeff = binomial_coefficient(total, goals_for);
        let fore = p.powi(goals_for as i32);
        let back = q.powi(against as i32);
        if mirror_swap {
            coeff * back * fore
        } else {
            coeff * fore * back
        }
    } else {
        // subtract the factorials smaller-first so the mirror groups alike
        let ln_choose = ln_factorial(total)
            - ln_factorial(goals_for.min(against))
            - ln_factorial(goals_for.max(against));
        let ln_fore = f64::from(goals_for) * p.ln();
        let ln_back = f64::from(against) * q.ln();
        // grouping (not operand order) decides the rounding here
        let ln_value = if mirror_swap {
            (ln_choose + ln_back) + ln_fore
        } else {
            (ln_choose + ln_fore) + ln_back
        };
        ln_value.exp()
    };
    Ok(value)
}

/// Joint probability of a `k:l` score: binomial conditional times the
/// total-goal Poisson. Identical to the product of two independent Poisson
/// pmfs with means `p·E` and `(1−p)·E`.
pub fn joint_score_prob(score: ScoreLine, params: LeagueParams, share: TeamShare) -> f64 {
    let total = score.total();
    let conditional = conditional_score_pmf(score.for_goals, total, share)
        .expect("for_goals never exceeds for_goals + against_goals");
    conditional * total_goals_pmf(total, params)
}

/// Smallest `M` with Poisson tail `P(m > M) < 1e-12`; sums over total goals
/// truncated here lose provably less mass than the reporting precision.
pub fn truncated_total_goals(expected: f64) -> u32 {
    if expected <= 0.0 {
        return 0;
    }
    let mut term = (-expected).exp();
    let mut cumulative = term;
    let mut m = 0u32;
    let cap = expected as u32 * 10 + 200;
    while 1.0 - cumulative >= TAIL_EPSILON && m < cap {
        m += 1;
        term *= expected / f64::from(m);
        cumulative += term;
    }
    m
}

/// Win/draw/loss probabilities for the team holding `share`, summing the
/// joint score distribution over the truncated total-goal range.
pub fn outcome_probabilities(params: LeagueParams, share: TeamShare) -> OutcomeProbs {
    let limit = truncated_total_goals(params.expected_goals());
    let mut outcome = OutcomeProbs {
        win: 0.0,
        draw: 0.0,
        loss: 0.0,
    };
    let mass = |goals_for: u32, total: u32| {
        total_goals_pmf(total, params)
            * conditional_score_pmf(goals_for, total, share)
                .expect("goals_for ranges over 0..=total")
    };
    for total in 0..=limit {
        // the loss sum mirrors the win sum's accumulation order so that
        // swapping the share swaps win and loss bit for bit
        for goals_for in total / 2 + 1..=total {
            outcome.win += mass(goals_for, total);
        }
        if total % 2 == 0 {
            outcome.draw += mass(total / 2, total);
        }
        for goals_for in (0..total.div_ceil(2)).rev() {
            outcome.loss += mass(goals_for, total);
        }
    }
    outcome
}

/// Probability that the team holding `share` scores the match's first goal:
/// `p · (1 − e^{−E})`. The second factor is the chance any goal falls at
/// all, which is why empirical first-goal frequencies sit slightly below
/// the raw share.
pub fn first_goal_prob(params: LeagueParams, share: TeamShare) -> f64 {
    share.value() * (1.0 - (-params.expected_goals()).exp())
}

/// Probability that the opponent scores the match's first two goals:
/// `(1−p)² · (1 − e^{−E}(1+E))`, the sequence-exact 0:2-deficit chance
/// including the requirement that at least two goals fall.
pub fn strict_leeway_prob(params: LeagueParams, share: TeamShare) -> f64 {
    let e = params.expected_goals();
    let q = share.complement().value();
    q * q * (1.0 - (-e).exp() * (1.0 + e))
}
