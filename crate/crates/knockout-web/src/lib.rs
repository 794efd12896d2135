//! Browser bindings for the demo page: every export takes primitives and
//! returns a JSON string, so the same functions are directly testable on
//! the host target.

use wasm_bindgen::prelude::*;

use knockout::pattern::eta;
use knockout::sampler::{
    chernoff_bound, estimate_mismatch_serial, min_lambda_for, pair_count, SimulationConfig,
};
use knockout::synthesis::{bracket_for_winner_explicit, check_top_seeds};
use knockout::tournament::winner_with_log;

fn err_json(message: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": message.to_string() }).to_string()
}

/// Synthesizes the bracket crowning `target` on a `2^n` board and plays it
/// out under the matching family pattern. Returns the board, the match log,
/// and the champion.
#[wasm_bindgen]
pub fn demo_bracket(n_exponent: u32, target: u32) -> String {
    let level = match n_exponent.checked_sub(3) {
        Some(level) => level,
        None => return err_json("board size exponent must be at least 3"),
    };
    let bracket = match bracket_for_winner_explicit(n_exponent, target) {
        Ok(b) => b,
        Err(e) => return err_json(e),
    };
    let pattern = match eta(level) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let (champion, log) = match winner_with_log(&pattern, &bracket) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let rounds: Vec<Vec<serde_json::Value>> = {
        let round_count = n_exponent;
        (1..=round_count)
            .map(|round| {
                log.iter()
                    .filter(|r| r.round == round)
                    .map(|r| {
                        serde_json::json!({
                            "left": r.left, "right": r.right, "winner": r.winner
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let seeds_split = if n_exponent >= 4 {
        check_top_seeds(&bracket).ok()
    } else {
        None
    };
    serde_json::json!({
        "board": bracket.positions(),
        "champion": champion,
        "rounds": rounds,
        "top_seeds_split": seeds_split,
    })
    .to_string()
}

/// Monte Carlo estimate of the commission mismatch probability at family
/// level `level` and intensity `lambda`, next to the analytic bound.
#[wasm_bindgen]
pub fn demo_robustness(level: u32, lambda: f64, trials: u32, seed: u32) -> String {
    let config = SimulationConfig {
        level,
        lambda,
        trials: trials as u64,
        seed: seed as u64,
    };
    match estimate_mismatch_serial(&config) {
        Ok(report) => serde_json::json!({
            "level": level,
            "lambda": lambda,
            "trials": report.trials,
            "mismatches": report.mismatches,
            "estimate": report.estimate,
            "ci_halfwidth": report.ci_halfwidth,
            "bound": report.bound,
        })
        .to_string(),
        Err(e) => err_json(e),
    }
}

/// Bound curve over a span of intensities, plus the minimal intensity whose
/// bound reaches `target`. Feeds the demo chart.
#[wasm_bindgen]
pub fn demo_bound_curve(level: u32, lambda_max: f64, points: u32, target: f64) -> String {
    if !(lambda_max.is_finite() && lambda_max > 0.0) || points < 2 {
        return err_json("need a positive intensity span and at least two points");
    }
    let points = points.min(512);
    let curve: Vec<serde_json::Value> = (1..=points)
        .map(|k| {
            let lambda = lambda_max * k as f64 / points as f64;
            let bound = chernoff_bound(level, lambda).expect("positive lambda");
            serde_json::json!({ "lambda": lambda, "bound": bound })
        })
        .collect();
    let min_lambda = min_lambda_for(level, target).ok();
    serde_json::json!({
        "level": level,
        "pair_count": pair_count(level),
        "curve": curve,
        "target": target,
        "min_lambda": min_lambda,
    })
    .to_string()
}
