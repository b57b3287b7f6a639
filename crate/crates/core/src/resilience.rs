//! Comeback probabilities after a 0:2 deficit and the resilience measure.
//!
//! The closed forms treat the goals as a fixed sequence: the opponent takes
//! the first two, the trailing team then scores two (draw) or three (win) in
//! a row, so no permutation factors appear. `delta(resilience)` is the gap
//! between a team's empirical comeback frequency and the constant-share
//! expectation; a brute-force enumeration of the underlying sequence model
//! serves as the independent cross-check for all of it.

use crate::error::{Error, Result};
use crate::scoring::{
    conditional_score_pmf, total_goals_pmf, truncated_total_goals, LeagueParams, TeamShare,
};

/// Closed-form chances around a 0:2 deficit for a team of given share.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComebackProbs {
    /// Chance of conceding the first two goals, `(1−p)²`.
    pub trailing: f64,
    /// Chance of the deficit ending in a 2:2 draw, `trailing · p²`.
    pub draw: f64,
    /// Chance of turning the deficit into a 3:2 win, `trailing · p³`.
    pub win: f64,
    /// Chance of avoiding the loss, `win + draw`.
    pub win_or_draw: f64,
}

/// Empirical-vs-expected comeback gap for one entity (team or league).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResilienceDelta {
    pub empirical: f64,
    pub expected: f64,
    /// `empirical − expected`; positive means more comebacks than the
    /// constant-share model predicts.
    pub delta: f64,
    /// Binomial standard error of the empirical frequency.
    pub std_error: f64,
}

impl ResilienceDelta {
    /// Flags deltas beyond two standard errors of the empirical rate.
    pub fn significant(&self) -> bool {
        self.delta.abs() > 2.0 * self.std_error
    }
}

/// Probability of conceding the match's first two goals: `(1−p)²`.
pub fn trailing_prob(share: TeamShare) -> f64 {
    let q = share.complement().value();
    q * q
}

/// Probability of a 2:2 draw after trailing 0:2: `trailing · p²`.
pub fn comeback_draw_prob(trailing: f64, share: TeamShare) -> f64 {
    debug_assert!((0.0..=1.0).contains(&trailing));
    let p = share.value();
    trailing * p * p
}

/// Probability of a 3:2 win after trailing 0:2: `trailing · p³`.
pub fn comeback_win_prob(trailing: f64, share: TeamShare) -> f64 {
    debug_assert!((0.0..=1.0).contains(&trailing));
    let p = share.value();
    trailing * p * p * p
}

/// Probability of avoiding the loss after trailing 0:2.
///
/// Computed as `comeback_draw_prob + comeback_win_prob`, so additivity is
/// exact; the value equals `trailing · p² (1 + p)`.
pub fn comeback_prob(trailing: f64, share: TeamShare) -> f64 {
    comeback_draw_prob(trailing, share) + comeback_win_prob(trailing, share)
}

/// All four deficit probabilities for one share.
pub fn comeback_probs(share: TeamShare) -> ComebackProbs {
    let trailing = trailing_prob(share);
    let draw = comeback_draw_prob(trailing, share);
    let win = comeback_win_prob(trailing, share);
    ComebackProbs {
        trailing,
        draw,
        win,
        win_or_draw: win + draw,
    }
}

/// Maximum of the composed comeback probability `(1−p)² p² (1+p)` over all
/// shares, with its argmax. Found by a coarse grid plus golden-section
/// refinement; the true optimum sits at `p = (√41 − 1)/10 ≈ 0.5403` with
/// value ≈ 0.09502, which is why a constant-strength side never avoids the
/// loss in much more than 9.5% of its 0:2 deficits.
pub fn max_comeback_bound() -> (f64, TeamShare) {
    let f = |p: f64| {
        let q = 1.0 - p;
        q * q * p * p * (1.0 + p)
    };
    let steps = 2048u32;
    let mut best_i = 0u32;
    let mut best = f64::MIN;
    for i in 0..=steps {
        let v = f(i as f64 / steps as f64);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut lo = (best_i.saturating_sub(1)) as f64 / steps as f64;
    let mut hi = ((best_i + 1).min(steps)) as f64 / steps as f64;
    // golden-section shrink of the bracketing interval
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let argmax = 0.5 * (lo + hi);
    (
        f(argmax),
        TeamShare::new(argmax).expect("argmax stays in [0, 1]"),
    )
}

/// Inverts the trailing probability: `p = 1 − √t`. Exact inverse of
/// `trailing_prob` on [0, 1].
pub fn strength_from_trailing(trailing: f64) -> Result<TeamShare> {
    if !(0.0..=1.0).contains(&trailing) {
        return Err(Error::ProbabilityOutOfRange {
            name: "trailing probability",
            value: trailing,
        });
    }
    TeamShare::new(1.0 - trailing.sqrt())
}

/// Solves `trailing · p'² (1 + p') = target` for the share `p'` a team must
/// adopt after the deficit to reach a given win-or-draw probability.
///
/// The left side grows strictly from 0 to `2·trailing` on [0, 1], so the
/// root is unique; bisection converges well below the 1e-9 contract.
pub fn required_strength(trailing: f64, target: f64) -> Result<TeamShare> {
    if !(trailing > 0.0 && trailing <= 1.0) {
        return Err(Error::ProbabilityOutOfRange {
            name: "trailing probability",
            value: trailing,
        });
    }
    // the reachable range is [0, 2·trailing]: p²(1+p) tops out at 2. With a
    // free-standing `trailing` the product can legitimately exceed 1.
    if !target.is_finite() || target < 0.0 {
        return Err(Error::ProbabilityOutOfRange {
            name: "target probability",
            value: target,
        });
    }
    let max = 2.0 * trailing;
    if target > max {
        return Err(Error::NoSolution { target, max });
    }
    let g = |p: f64| trailing * p * p * (1.0 + p) - target;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        if hi - lo < 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    TeamShare::new(0.5 * (lo + hi))
}

/// Empirical-minus-expected comeback gap with its binomial standard error
/// over `n_leeways` observed deficits (zero error when none were seen).
pub fn resilience_delta(empirical: f64, expected: f64, n_leeways: u64) -> ResilienceDelta {
    debug_assert!((0.0..=1.0).contains(&empirical));
    debug_assert!((0.0..=1.0).contains(&expected));
    let std_error = if n_leeways == 0 {
        0.0
    } else {
        (empirical * (1.0 - empirical) / n_leeways as f64).sqrt()
    };
    ResilienceDelta {
        empirical,
        expected,
        delta: empirical - expected,
        std_error,
    }
}

/// Exact conditional comeback probability under the full sequence model.
///
/// Model: the total-goal count is Poisson(`E`); the opponent takes the first
/// two goals; each of the remaining `m − 2` goals falls to the trailing team
/// independently with probability `boosted_share` (set it to the team's
/// ordinary share to model the no-resilience baseline). Returns
/// `P(final win or draw | first two goals conceded)` by direct summation
/// with the usual 1e-12 tail truncation, counting every final score that
/// avoids the loss — 4:2, 4:3 and higher included.
///
/// Conditioning on the 0:2 start makes the result independent of the team's
/// pre-deficit share, which is why no such parameter appears. For `E = 0`
/// the condition has probability zero; 0 is returned by convention.
pub fn exact_comeback_given_leeway(params: LeagueParams, boosted_share: TeamShare) -> f64 {
    let at_least_two = 1.0 - total_goals_pmf(0, params) - total_goals_pmf(1, params);
    if at_least_two <= 0.0 {
        return 0.0;
    }
    let limit = truncated_total_goals(params.expected_goals()).max(2);
    let mut conditional = 0.0;
    for total in 2..=limit {
        let weight = total_goals_pmf(total, params) / at_least_two;
        // win or draw means scoring at least ceil(m/2) of all m goals, i.e.
        // at least ceil(m/2) of the m−2 remaining ones
        conditional += weight * binomial_tail_at_least(total - 2, boosted_share, total.div_ceil(2));
    }
    conditional
}

/// `P(Binomial(n, p) >= threshold)`.
fn binomial_tail_at_least(n: u32, share: TeamShare, threshold: u32) -> f64 {
    if threshold > n {
        return 0.0;
    }
    (threshold..=n)
        .map(|x| conditional_score_pmf(x, n, share).expect("x ranges over 0..=n"))
        .sum()
}
