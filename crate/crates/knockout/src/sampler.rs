//! Randomly weighted commissions: draw independent Poisson multiplicities
//! for the rows of a level profile, ask whether the weighted majority still
//! reproduces the target pattern, and bound the failure probability.
//!
//! Splitting a Poisson stream of total intensity `lambda` uniformly over
//! the `4n + 10` rows leaves the row weights independent Poisson variables
//! with mean `lambda / (4n + 10)`. On each candidate pair the rows favoring
//! one side outnumber the rows favoring the other (margins are nonzero and
//! even), so the weighted margin flips or ties only on a large-deviation
//! event whose probability decays exponentially in `lambda`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::model::{
    pair_count_for, Candidate, CommissionSample, Error, PreferencePattern, Result, Side,
    VotingProfile,
};
use crate::pattern::eta;
use crate::profile::{build_profile, profile_row_count};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;
/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.575_829_303_548_900_4;

/// Parameters of a mismatch-probability estimation run.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct SimulationConfig {
    /// Family level; the field has `2^(level+3)` candidates.
    pub level: u32,
    /// Total Poisson intensity split over the profile rows.
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::InvalidLambda(self.lambda));
        }
        if self.trials == 0 {
            return Err(Error::InvalidTrials);
        }
        Ok(())
    }
}

/// Outcome of one estimation run.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct SimulationReport {
    pub mismatches: u64,
    pub trials: u64,
    /// Empirical mismatch frequency.
    pub estimate: f64,
    /// Half-width of the 95% Wilson score interval around the estimate.
    pub ci_halfwidth: f64,
    /// The analytic upper bound at the same intensity.
    pub bound: f64,
}

/// The generator used for trial `trial` of a run: one shared seed, one
/// dedicated stream per trial, so serial and parallel execution see
/// identical randomness.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws one commission: independent Poisson weights of mean
/// `lambda / (4 * level + 10)` for each row of the level profile.
pub fn sample_commission(level: u32, lambda: f64, rng: &mut impl Rng) -> Result<CommissionSample> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidLambda(lambda));
    }
    let rows = profile_row_count(level);
    let mean = lambda / rows as f64;
    let poisson = Poisson::new(mean).map_err(|_| Error::InvalidLambda(lambda))?;
    let weights = (0..rows)
        .map(|_| {
            let w: f64 = poisson.sample(rng);
            w as u64
        })
        .collect();
    Ok(CommissionSample { weights, lambda })
}

/// What a weighted commission induces on the candidate pairs.
#[derive(Clone, PartialEq, Debug)]
pub enum InducedOutcome {
    /// Every weighted margin is nonzero; the strict pattern they define.
    Pattern(PreferencePattern),
    /// At least one weighted margin is zero.
    Tie {
        /// Lexicographically first tied pair.
        first: (Candidate, Candidate),
        tied_pairs: u64,
    },
}

impl InducedOutcome {
    pub fn is_tie(&self) -> bool {
        matches!(self, InducedOutcome::Tie { .. })
    }
}

/// The weighted-majority outcome of a commission over a standard profile:
/// each row's orientation counts with its weight.
pub fn induced_outcome(
    profile: &VotingProfile,
    sample: &CommissionSample,
) -> Result<InducedOutcome> {
    if sample.weights.len() != profile.row_count() {
        return Err(Error::WeightCountMismatch {
            rows: profile.row_count(),
            weights: sample.weights.len(),
        });
    }
    let tables = profile.position_tables()?;
    let m = profile.candidate_count();
    if !(m >= 2 && m.is_power_of_two()) {
        return Err(Error::LengthNotPowerOfTwo(m as usize));
    }
    let mut by_pair = vec![Side::Left; pair_count_for(m) as usize];
    let mut tie_first = None;
    let mut tied = 0u64;
    for i in 1..m {
        for j in (i + 1)..=m {
            let mut margin = 0i64;
            for (pos, &w) in tables.iter().zip(&sample.weights) {
                if w == 0 {
                    continue;
                }
                let w = w as i64;
                margin += if pos[(i - 1) as usize] < pos[(j - 1) as usize] { w } else { -w };
            }
            if margin == 0 {
                tied += 1;
                if tie_first.is_none() {
                    tie_first = Some((i, j));
                }
            } else if margin < 0 {
                by_pair[crate::model::pair_index(i, j)] = Side::Right;
            }
        }
    }
    if let Some(first) = tie_first {
        return Ok(InducedOutcome::Tie { first, tied_pairs: tied });
    }
    let pattern = PreferencePattern::from_fn(m.trailing_zeros(), |i, j| {
        by_pair[crate::model::pair_index(i, j)]
    })?;
    Ok(InducedOutcome::Pattern(pattern))
}

struct TrialContext {
    /// Per row, one sign per canonical pair: +1 where the row agrees with
    /// the target pattern, -1 where it opposes it.
    row_signs: Vec<Vec<i8>>,
    pair_count: usize,
    rows: usize,
    mean: f64,
}

impl TrialContext {
    fn new(level: u32, lambda: f64) -> Result<Self> {
        let profile = build_profile(level)?;
        let target = eta(level)?;
        let tables = profile.position_tables()?;
        let m = profile.candidate_count();
        let pair_count = pair_count_for(m) as usize;
        // Pre-orient every row against the target: sign +1 when the row
        // agrees with the target on that pair. The weighted margin in
        // target-orientation terms must stay strictly positive.
        let mut row_signs = Vec::with_capacity(tables.len());
        for pos in &tables {
            let mut signs = vec![0i8; pair_count];
            let mut k = 0;
            for i in 1..m {
                for j in (i + 1)..=m {
                    let row_prefers_lower = pos[(i - 1) as usize] < pos[(j - 1) as usize];
                    let target_lower = target.side_unchecked(i, j) == Side::Left;
                    signs[k] = if row_prefers_lower == target_lower { 1 } else { -1 };
                    k += 1;
                }
            }
            row_signs.push(signs);
        }
        let rows = profile.row_count();
        Ok(TrialContext {
            row_signs,
            pair_count,
            rows,
            mean: lambda / rows as f64,
        })
    }

    /// Whether the commission drawn from `rng` fails to reproduce the
    /// target pattern (a tie on any pair counts as failure).
    fn trial_is_mismatch(&self, rng: &mut ChaCha8Rng) -> bool {
        let poisson = Poisson::new(self.mean).expect("mean was validated");
        let weights: Vec<i64> = (0..self.rows)
            .map(|_| {
                let w: f64 = poisson.sample(rng);
                w as i64
            })
            .collect();
        let mut margins = vec![0i64; self.pair_count];
        for (signs, &w) in self.row_signs.iter().zip(&weights) {
            if w == 0 {
                continue;
            }
            for (margin, &s) in margins.iter_mut().zip(signs) {
                *margin += w * s as i64;
            }
        }
        margins.iter().any(|&m| m <= 0)
    }
}

/// Half-width of the Wilson score interval for `successes` out of `trials`
/// at normal quantile `z`.
pub fn wilson_halfwidth(successes: u64, trials: u64, z: f64) -> f64 {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n)
}

fn report_from_counts(config: &SimulationConfig, mismatches: u64) -> Result<SimulationReport> {
    Ok(SimulationReport {
        mismatches,
        trials: config.trials,
        estimate: mismatches as f64 / config.trials as f64,
        ci_halfwidth: wilson_halfwidth(mismatches, config.trials, Z95),
        bound: chernoff_bound(config.level, config.lambda)?,
    })
}

/// Monte Carlo estimate of the probability that a Poisson commission fails
/// to reproduce the level pattern. Trials use independent generator
/// streams, so the result does not depend on execution order.
#[cfg(feature = "parallel")]
pub fn estimate_mismatch(config: &SimulationConfig) -> Result<SimulationReport> {
    use rayon::prelude::*;
    config.validate()?;
    let ctx = TrialContext::new(config.level, config.lambda)?;
    let mismatches = (0..config.trials)
        .into_par_iter()
        .filter(|&trial| {
            let mut rng = trial_rng(config.seed, trial);
            ctx.trial_is_mismatch(&mut rng)
        })
        .count() as u64;
    report_from_counts(config, mismatches)
}

#[cfg(not(feature = "parallel"))]
pub fn estimate_mismatch(config: &SimulationConfig) -> Result<SimulationReport> {
    estimate_mismatch_serial(config)
}

/// Single-threaded variant of [`estimate_mismatch`] with identical output.
pub fn estimate_mismatch_serial(config: &SimulationConfig) -> Result<SimulationReport> {
    config.validate()?;
    let ctx = TrialContext::new(config.level, config.lambda)?;
    let mut mismatches = 0u64;
    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        if ctx.trial_is_mismatch(&mut rng) {
            mismatches += 1;
        }
    }
    report_from_counts(config, mismatches)
}

/// The zero of the tilted cumulant gap for two Poisson intensities:
/// `(sqrt(hi) - sqrt(lo))^2`, the large-deviation exponent at which a
/// Poisson(`hi`) total can be dragged down to a Poisson(`lo`) total.
pub fn rate_function_zero(hi: f64, lo: f64) -> Result<f64> {
    if !(hi.is_finite() && lo.is_finite()) || lo < 0.0 || hi <= lo {
        return Err(Error::RateOrdering { hi, lo });
    }
    let d = hi.sqrt() - lo.sqrt();
    Ok(d * d)
}

/// Number of candidate pairs at a family level: `2^(n+2) * (2^(n+3) - 1)`.
pub fn pair_count(level: u32) -> u64 {
    pair_count_for(1u32 << (level + 3))
}

/// Exponential decay rate of a single pair's mismatch probability at total
/// intensity `lambda`: on the worst pair, `2n + 6` rows back the majority
/// side against `2n + 4`, each with mean `lambda / (4n + 10)`.
fn mismatch_exponent(level: u32, lambda: f64) -> f64 {
    let rows = profile_row_count(level) as f64;
    let favor = (2 * level + 6) as f64;
    let against = (2 * level + 4) as f64;
    rate_function_zero(favor * lambda / rows, against * lambda / rows)
        .expect("favoring rows always outnumber opposing rows")
}

/// Upper bound on a single pair's probability of tying or flipping under a
/// Poisson commission of total intensity `lambda`.
pub fn pair_mismatch_bound(level: u32, lambda: f64) -> Result<f64> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidLambda(lambda));
    }
    Ok((-mismatch_exponent(level, lambda)).exp())
}

/// Union bound over all pairs on the probability that the commission's
/// weighted majority differs from the level pattern (ties included).
pub fn chernoff_bound(level: u32, lambda: f64) -> Result<f64> {
    Ok(pair_count(level) as f64 * pair_mismatch_bound(level, lambda)?)
}

/// Smallest intensity at which [`chernoff_bound`] drops to `p_target`.
/// The target is a bound value, not a probability, so anything in
/// `(0, pair_count)` is meaningful.
pub fn min_lambda_for(level: u32, p_target: f64) -> Result<f64> {
    let pairs = pair_count(level) as f64;
    if !(p_target.is_finite() && p_target > 0.0 && p_target < pairs) {
        return Err(Error::InvalidTarget(p_target));
    }
    let unit_rate = mismatch_exponent(level, 1.0);
    Ok((pairs / p_target).ln() / unit_rate)
}
