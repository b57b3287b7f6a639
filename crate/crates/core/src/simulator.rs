//! Seedable Monte Carlo generator of goal sequences under the model.
//!
//! Each match draws its total-goal count from Poisson(`E`) by inversion and
//! assigns every goal independently to the home side with the match's home
//! share. With a resilience boost configured, a side that concedes the
//! match's first two goals switches its own share to the boost value for
//! all remaining goals and never reverts.
//!
//! Reproducibility contract: the generator for match `i` is ChaCha8 keyed
//! by the master seed with stream id `i`. Matches are therefore pure
//! functions of `(config, index)` — any partitioning or ordering of the
//! index range yields the identical corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{GoalSide, MatchRecord, Season};
use crate::error::{Error, Result};
use crate::scoring::TeamShare;

/// First synthesized season; mirrors the league the corpus format imitates.
const BASE_SEASON_YEAR: u16 = 1963;

/// Largest start year representable in the `YYYY/YY` season label.
const MAX_SEASON_YEAR: u64 = 9998;

/// Matches per synthesized season when no team pool is given: a 18-team
/// double round robin's 306, nine per matchday.
const DEFAULT_SEASON_MATCHES: u64 = 306;
const DEFAULT_MATCHES_PER_DAY: u64 = 9;

/// Default fixture names for pool-less corpora.
const DEFAULT_HOME_NAME: &str = "Hosts";
const DEFAULT_AWAY_NAME: &str = "Visitors";

/// A named team with its standalone strength estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct TeamRating {
    pub name: String,
    pub share: TeamShare,
}

/// Full description of a synthetic corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub expected_goals: f64,
    /// Goal share of the home side (when two rated teams meet, this is the
    /// league-level home advantage folded into their pairing).
    pub home_share: TeamShare,
    /// Share adopted by a side once it strictly trails 0:2.
    pub resilience_boost: Option<TeamShare>,
    pub n_matches: u64,
    pub seed: u64,
    /// Optional named teams; matches then follow a synthesized double
    /// round robin instead of the fixed two-side fixture.
    pub team_pool: Option<Vec<TeamRating>>,
}

impl SimConfig {
    /// Uniform two-team corpus with no boost.
    pub fn new(expected_goals: f64, home_share: TeamShare, n_matches: u64, seed: u64) -> Self {
        SimConfig {
            expected_goals,
            home_share,
            resilience_boost: None,
            n_matches,
            seed,
            team_pool: None,
        }
    }
}

/// A corpus generator: validated config plus the prebuilt season schedule.
#[derive(Debug)]
pub struct Simulator {
    config: SimConfig,
    /// One season of `(matchday, home index, away index)` fixtures when a
    /// team pool is configured.
    schedule: Option<Vec<(u32, usize, usize)>>,
}

impl Simulator {
    pub fn new(config: SimConfig) -> Result<Self> {
        if !config.expected_goals.is_finite() || config.expected_goals < 0.0 {
            return Err(Error::InvalidExpectedGoals(config.expected_goals));
        }
        if config.n_matches == 0 {
            return Err(Error::EmptyInput("a corpus needs at least one match"));
        }
        let schedule = match &config.team_pool {
            None => None,
            Some(pool) => {
                if pool.len() < 2 {
                    return Err(Error::EmptyInput("a team pool needs at least two teams"));
                }
                let mut names: Vec<&str> = pool.iter().map(|t| t.name.as_str()).collect();
                names.sort_unstable();
                names.dedup();
                if names.len() != pool.len() || names.iter().any(|n| n.is_empty()) {
                    return Err(Error::EmptyInput(
                        "team pool names must be unique and non-empty",
                    ));
                }
                Some(double_round_robin(pool.len()))
            }
        };
        let per_season = schedule
            .as_ref()
            .map_or(DEFAULT_SEASON_MATCHES, |s| s.len() as u64);
        let last_season = u64::from(BASE_SEASON_YEAR) + (config.n_matches - 1) / per_season;
        if last_season > MAX_SEASON_YEAR {
            return Err(Error::EmptyInput(
                "corpus spans more synthesized seasons than the label format allows",
            ));
        }
        Ok(Simulator { config, schedule })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    /// Matches in one synthesized season.
    pub fn matches_per_season(&self) -> u64 {
        self.schedule
            .as_ref()
            .map_or(DEFAULT_SEASON_MATCHES, |s| s.len() as u64)
    }

    /// Generates match `index` of the corpus; pure in `(config, index)`.
    pub fn match_at(&self, index: u64) -> MatchRecord {
        debug_assert!(index < self.config.n_matches);
        let per_season = self.matches_per_season();
        let season = Season::new(BASE_SEASON_YEAR + (index / per_season) as u16);
        let within = index % per_season;

        let (matchday, home_name, away_name, home_share) =
            match (&self.schedule, &self.config.team_pool) {
                (Some(schedule), Some(pool)) => {
                    let (day, h, a) = schedule[within as usize];
                    (
                        day,
                        pool[h].name.as_str(),
                        pool[a].name.as_str(),
                        head_to_head_share(pool[h].share, pool[a].share, self.config.home_share),
                    )
                }
                _ => (
                    (within / DEFAULT_MATCHES_PER_DAY) as u32 + 1,
                    DEFAULT_HOME_NAME,
                    DEFAULT_AWAY_NAME,
                    self.config.home_share,
                ),
            };

        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(index);
        let goals = self.draw_goal_sequence(home_share, &mut rng);
        MatchRecord::new(season, matchday, home_name, away_name, goals)
            .expect("fixture construction keeps team names distinct")
    }

    /// Streams the whole corpus in index order.
    pub fn iter(&self) -> impl Iterator<Item = MatchRecord> + '_ {
        (0..self.config.n_matches).map(|i| self.match_at(i))
    }

    fn draw_goal_sequence(&self, home_share: TeamShare, rng: &mut ChaCha8Rng) -> Vec<GoalSide> {
        let total = sample_total_goals(self.config.expected_goals, rng);
        let mut p_home = home_share.value();
        let mut sequence = Vec::with_capacity(total as usize);
        for i in 0..total {
            let side = if rng.random::<f64>() < p_home {
                GoalSide::Home
            } else {
                GoalSide::Away
            };
            sequence.push(side);
            // a strict 0:2 start flips the trailing side onto the boost
            if i == 1 && sequence[0] == sequence[1] {
                if let Some(boost) = self.config.resilience_boost {
                    p_home = match sequence[0] {
                        GoalSide::Away => boost.value(),
                        GoalSide::Home => 1.0 - boost.value(),
                    };
                }
            }
        }
        sequence
    }
}

/// Convenience wrapper building the generator and collecting the corpus.
pub fn simulate_corpus(config: SimConfig) -> Result<Vec<MatchRecord>> {
    let sim = Simulator::new(config)?;
    Ok(sim.iter().collect())
}

/// Poisson sampling by inversion: exact for the moderate expectations used
/// here (the cumulative sum loses precision only for expectations far
/// beyond any scoring sport).
fn sample_total_goals(expected: f64, rng: &mut impl Rng) -> u32 {
    if expected <= 0.0 {
        return 0;
    }
    let u: f64 = rng.random();
    let mut pmf = (-expected).exp();
    let mut cdf = pmf;
    let mut goals = 0u32;
    let cap = expected as u32 * 10 + 200;
    while u >= cdf && goals < cap {
        goals += 1;
        pmf *= expected / f64::from(goals);
        cdf += pmf;
    }
    goals
}

/// Home share of a match between two rated sides: their strengths are
/// first normalized head-to-head (`q = a/(a+b)`), then the league home
/// advantage `h` shifts the result on the odds scale:
/// `p = q·h / (q·h + (1−q)(1−h))`. Reduces to `q` without home advantage
/// and to `h` for equally rated sides.
fn head_to_head_share(a: TeamShare, b: TeamShare, home_advantage: TeamShare) -> TeamShare {
    let sum = a.value() + b.value();
    let neutral = if sum == 0.0 { 0.5 } else { a.value() / sum };
    let h = home_advantage.value();
    let favored = neutral * h;
    let denominator = favored + (1.0 - neutral) * (1.0 - h);
    let p = if denominator == 0.0 {
        neutral
    } else {
        favored / denominator
    };
    TeamShare::new(p).expect("odds composition stays within [0, 1]")
}

/// One season of home/away fixtures for `n` teams by the circle method;
/// the second half mirrors the first with venues swapped.
fn double_round_robin(n: usize) -> Vec<(u32, usize, usize)> {
    let slots = n + n % 2; // phantom bye slot for odd pools
    let rounds = (slots - 1) as u32;
    let mut order: Vec<usize> = (0..slots).collect();
    let mut first_legs = Vec::with_capacity(n * (n - 1) / 2);
    for round in 0..rounds {
        for i in 0..slots / 2 {
            let (a, b) = (order[i], order[slots - 1 - i]);
            if a >= n || b >= n {
                continue;
            }
            let (home, away) = if (round as usize + i).is_multiple_of(2) {
                (a, b)
            } else {
                (b, a)
            };
            first_legs.push((round + 1, home, away));
        }
        order[1..].rotate_right(1);
    }
    let mut schedule = first_legs.clone();
    schedule.extend(
        first_legs
            .iter()
            .map(|&(round, home, away)| (rounds + round, away, home)),
    );
    schedule
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Perspective;

    fn base_config(n: u64) -> SimConfig {
        SimConfig::new(3.1, TeamShare::EVEN, n, 42)
    }

    #[test]
    fn zero_expectation_yields_goalless_matches() {
        let sim = Simulator::new(SimConfig::new(0.0, TeamShare::EVEN, 50, 7)).unwrap();
        assert!(sim.iter().all(|m| m.final_score() == (0, 0)));
    }

    #[test]
    fn full_home_share_shuts_out_the_away_side() {
        let sim =
            Simulator::new(SimConfig::new(3.1, TeamShare::new(1.0).unwrap(), 200, 7)).unwrap();
        assert!(sim.iter().all(|m| m.goals_for(Perspective::Away) == 0));
    }

    #[test]
    fn fixed_seed_reproduces_the_corpus() {
        let a: Vec<_> = Simulator::new(base_config(100)).unwrap().iter().collect();
        let b: Vec<_> = Simulator::new(base_config(100)).unwrap().iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn matches_are_pure_in_the_index() {
        // generating out of order or in partitions changes nothing
        let sim = Simulator::new(base_config(64)).unwrap();
        let forward: Vec<_> = sim.iter().collect();
        let mut backward: Vec<_> = (0..64).rev().map(|i| sim.match_at(i)).collect();
        backward.reverse();
        assert_eq!(forward, backward);
    }

    #[test]
    fn different_seeds_differ() {
        let a: Vec<_> = Simulator::new(base_config(50)).unwrap().iter().collect();
        let mut other = base_config(50);
        other.seed = 43;
        let b: Vec<_> = Simulator::new(other).unwrap().iter().collect();
        assert_ne!(a, b);
    }

    #[test]
    fn seasons_and_matchdays_advance() {
        let sim = Simulator::new(base_config(620)).unwrap();
        let first = sim.match_at(0);
        assert_eq!(first.season().to_string(), "1963/64");
        assert_eq!(first.matchday(), 1);
        let mid = sim.match_at(305);
        assert_eq!(mid.season().to_string(), "1963/64");
        assert_eq!(mid.matchday(), 34);
        let next_season = sim.match_at(306);
        assert_eq!(next_season.season().to_string(), "1964/65");
        assert_eq!(next_season.matchday(), 1);
    }

    #[test]
    fn boost_applies_to_the_trailing_side_only() {
        // with a boost of 1.0 the trailing side scores every later goal, so
        // no match that starts 0:2 or 2:0 can end as a shutout of 3+ goals
        let config = SimConfig {
            resilience_boost: Some(TeamShare::new(1.0).unwrap()),
            ..base_config(3000)
        };
        let sim = Simulator::new(config).unwrap();
        for m in sim.iter() {
            let seq = m.goal_sequence();
            if seq.len() >= 3 && seq[0] == seq[1] {
                assert!(
                    seq[2..].iter().all(|&g| g != seq[0]),
                    "boosted side must take every goal after the 0:2: {seq:?}"
                );
            }
        }
    }

    #[test]
    fn team_pool_plays_a_double_round_robin() {
        let pool: Vec<TeamRating> = (0..4)
            .map(|i| TeamRating {
                name: format!("Team{i}"),
                share: TeamShare::EVEN,
            })
            .collect();
        let config = SimConfig {
            team_pool: Some(pool),
            ..base_config(24)
        };
        let sim = Simulator::new(config).unwrap();
        assert_eq!(sim.matches_per_season(), 12);
        let matches: Vec<_> = sim.iter().collect();
        // every ordered pair appears exactly once per season
        let mut pairs: Vec<(String, String)> = matches[..12]
            .iter()
            .map(|m| (m.home_team().to_owned(), m.away_team().to_owned()))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 12);
        // second season repeats the schedule
        assert_eq!(matches[12].home_team(), matches[0].home_team());
        assert_eq!(matches[12].season().to_string(), "1964/65");
    }

    #[test]
    fn odd_pools_get_byes_not_panics() {
        let pool: Vec<TeamRating> = (0..5)
            .map(|i| TeamRating {
                name: format!("Team{i}"),
                share: TeamShare::new(0.4 + 0.05 * i as f64).unwrap(),
            })
            .collect();
        let config = SimConfig {
            team_pool: Some(pool),
            ..base_config(40)
        };
        let sim = Simulator::new(config).unwrap();
        assert_eq!(sim.matches_per_season(), 20);
        assert_eq!(sim.iter().count(), 40);
    }

    #[test]
    fn config_validation() {
        assert!(Simulator::new(SimConfig::new(-1.0, TeamShare::EVEN, 10, 0)).is_err());
        assert!(Simulator::new(SimConfig::new(3.0, TeamShare::EVEN, 0, 0)).is_err());
        let too_long = SimConfig::new(3.0, TeamShare::EVEN, 3_000_000, 0);
        assert!(Simulator::new(too_long).is_err());
        let dup_pool = SimConfig {
            team_pool: Some(vec![
                TeamRating {
                    name: "Same".into(),
                    share: TeamShare::EVEN,
                },
                TeamRating {
                    name: "Same".into(),
                    share: TeamShare::EVEN,
                },
            ]),
            ..base_config(10)
        };
        assert!(Simulator::new(dup_pool).is_err());
    }

    #[test]
    fn head_to_head_share_composition() {
        let s = |v: f64| TeamShare::new(v).unwrap();
        // equal ratings leave the home advantage as-is
        assert!((head_to_head_share(s(0.7), s(0.7), s(0.6)).value() - 0.6).abs() < 1e-15);
        // no home advantage leaves the normalized strength as-is
        assert!((head_to_head_share(s(0.8), s(0.4), s(0.5)).value() - 2.0 / 3.0).abs() < 1e-15);
        // degenerate zero ratings fall back to an even split
        assert_eq!(head_to_head_share(s(0.0), s(0.0), s(0.5)).value(), 0.5);
    }
}
