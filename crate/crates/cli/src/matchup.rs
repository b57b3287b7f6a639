//! The `matchup` subcommand: head-to-head strengths and forecasts.

use clap::Args;
use serde_json::json;

use goalstats::matchup::{
    dominance_confidence, forecast, pairwise_share, share_from_goals, TeamRecordSummary,
};
use goalstats::resilience::{required_strength, trailing_prob};
use goalstats::scoring::{LeagueParams, ScoreLine, TeamShare};

use crate::CliError;

#[derive(Args)]
pub struct MatchupArgs {
    /// Goals side A scored over its record
    #[arg(long = "gf-a")]
    gf_a: Option<u64>,
    /// Goals side A conceded
    #[arg(long = "ga-a")]
    ga_a: Option<u64>,
    /// Goals side B scored
    #[arg(long = "gf-b")]
    gf_b: Option<u64>,
    /// Goals side B conceded
    #[arg(long = "ga-b")]
    ga_b: Option<u64>,

    /// Side A's goal share directly (instead of the four goal counts)
    #[arg(long, conflicts_with_all = ["gf_a", "ga_a", "gf_b", "ga_b"])]
    share: Option<f64>,

    /// Expected total goals per match
    #[arg(long, default_value_t = 3.1)]
    expected_goals: f64,

    /// Feed side A's raw share into the forecast instead of normalizing the
    /// two records head-to-head
    #[arg(long)]
    raw_share: bool,

    /// Report the confidence that this score (for side A) reflects a real
    /// strength edge, e.g. --score 8:3
    #[arg(long)]
    score: Option<ScoreLine>,

    /// Win-or-draw probability after an 0:2 start; solves for the share the
    /// trailing side would need
    #[arg(long)]
    comeback_target: Option<f64>,

    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

struct Shares {
    side_a: Option<(f64, u64, u64)>,
    side_b: Option<(f64, u64, u64)>,
    head_to_head: TeamShare,
    normalized: bool,
}

fn resolve_shares(args: &MatchupArgs) -> Result<Shares, CliError> {
    if let Some(share) = args.share {
        let head = TeamShare::new(share)
            .map_err(|_| CliError::Data(format!("--share must lie in [0, 1], got {share}")))?;
        return Ok(Shares {
            side_a: None,
            side_b: None,
            head_to_head: head,
            normalized: false,
        });
    }
    match (args.gf_a, args.ga_a, args.gf_b, args.ga_b) {
        (Some(gf_a), Some(ga_a), Some(gf_b), Some(ga_b)) => {
            let a = share_from_goals(TeamRecordSummary::new(gf_a, ga_a))
                .map_err(|e| CliError::Data(e.to_string()))?;
            let b = share_from_goals(TeamRecordSummary::new(gf_b, ga_b))
                .map_err(|e| CliError::Data(e.to_string()))?;
            let head = if args.raw_share {
                a
            } else {
                pairwise_share(a, b).map_err(|e| CliError::Data(e.to_string()))?
            };
            Ok(Shares {
                side_a: Some((a.value(), gf_a, ga_a)),
                side_b: Some((b.value(), gf_b, ga_b)),
                head_to_head: head,
                normalized: !args.raw_share,
            })
        }
        _ => Err(CliError::Data(
            "provide either --share or all of --gf-a --ga-a --gf-b --ga-b".into(),
        )),
    }
}

pub fn run(args: MatchupArgs) -> Result<(), CliError> {
    let shares = resolve_shares(&args)?;
    let params =
        LeagueParams::neutral(args.expected_goals).map_err(|e| CliError::Data(e.to_string()))?;
    let outcome = forecast(params, shares.head_to_head);

    let confidence = args
        .score
        .map(|score| {
            dominance_confidence(score)
                .map(|c| (score, c))
                .map_err(|e| CliError::Data(e.to_string()))
        })
        .transpose()?;

    let required = args
        .comeback_target
        .map(|target| {
            let trailing = trailing_prob(shares.head_to_head);
            required_strength(trailing, target)
                .map(|p| (target, trailing, p.value()))
                .map_err(|e| CliError::Data(e.to_string()))
        })
        .transpose()?;

    if args.json {
        let doc = json!({
            "expected_goals": args.expected_goals,
            "side_a": shares.side_a.map(|(share, gf, ga)| json!({
                "share": share, "goals_for": gf, "goals_against": ga,
            })),
            "side_b": shares.side_b.map(|(share, gf, ga)| json!({
                "share": share, "goals_for": gf, "goals_against": ga,
            })),
            "head_to_head_share": shares.head_to_head.value(),
            "normalized": shares.normalized,
            "forecast": { "win": outcome.win, "draw": outcome.draw, "loss": outcome.loss },
            "dominance": confidence.map(|(score, c)| json!({
                "score": score.to_string(),
                "confidence": c,
                "note": DOMINANCE_NOTE,
            })),
            "required_strength": required.map(|(target, trailing, p)| json!({
                "target": target, "trailing": trailing, "share": p,
            })),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("json values serialize")
        );
        return Ok(());
    }

    if let Some((share, gf, ga)) = shares.side_a {
        println!("side A share: {share:.4} ({gf} scored / {ga} conceded)");
    }
    if let Some((share, gf, ga)) = shares.side_b {
        println!("side B share: {share:.4} ({gf} scored / {ga} conceded)");
    }
    println!(
        "head-to-head share for A: {:.4}{}",
        shares.head_to_head.value(),
        if shares.normalized {
            " (records normalized against each other)"
        } else {
            ""
        },
    );
    println!(
        "forecast for A at E = {:.2}: win {:.1}%, draw {:.1}%, loss {:.1}%",
        args.expected_goals,
        100.0 * outcome.win,
        100.0 * outcome.draw,
        100.0 * outcome.loss,
    );
    if let Some((score, c)) = confidence {
        println!(
            "score {score}: dominance confidence {:.2}% — {DOMINANCE_NOTE}",
            100.0 * c
        );
    }
    if let Some((target, trailing, p)) = required {
        println!(
            "to lift the win-or-draw chance after an 0:2 start to {:.1}% \
             (trailing probability {:.4}), the share must rise to {:.3}",
            100.0 * target,
            trailing,
            p,
        );
    }
    Ok(())
}

const DOMINANCE_NOTE: &str = "posterior P(winner's goal share > 1/2) under a uniform prior; \
                              model-specific, not comparable to other published confidences";
