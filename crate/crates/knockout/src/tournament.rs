//! Playing knockout tournaments under a preference pattern, and exhaustive
//! winner enumeration over all brackets for small fields.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::model::{pair_count_for, Bracket, Candidate, Error, PreferencePattern, Result, Side};

/// The entrants still alive in some round, in board order. Always a power of
/// two; a singleton lineup is a finished tournament.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lineup {
    entrants: Vec<Candidate>,
}

impl Lineup {
    pub fn new(entrants: Vec<Candidate>) -> Result<Self> {
        if entrants.is_empty() || !entrants.len().is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(entrants.len()));
        }
        let mut sorted = entrants.clone();
        sorted.sort_unstable();
        if sorted[0] == 0 {
            return Err(Error::ZeroCandidate);
        }
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateCandidate(w[0]));
            }
        }
        Ok(Lineup { entrants })
    }

    pub fn from_bracket(bracket: &Bracket) -> Self {
        Lineup {
            entrants: bracket.positions().to_vec(),
        }
    }

    pub fn entrants(&self) -> &[Candidate] {
        &self.entrants
    }

    pub fn len(&self) -> usize {
        self.entrants.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Rounds left to play.
    pub fn rounds_remaining(&self) -> u32 {
        self.entrants.len().trailing_zeros()
    }
}

/// One decided match.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct MatchRecord {
    pub round: u32,
    pub left: Candidate,
    pub right: Candidate,
    pub winner: Candidate,
}

fn check_entrants(pattern: &PreferencePattern, entrants: &[Candidate]) -> Result<()> {
    let m = pattern.candidate_count();
    for &c in entrants {
        if c > m {
            return Err(Error::CandidateOutOfRange { candidate: c, count: m });
        }
    }
    Ok(())
}

/// Plays one round: slots `2k-1` and `2k` meet, winners keep their order.
pub fn play_round(pattern: &PreferencePattern, lineup: &Lineup) -> Result<Lineup> {
    if lineup.len() < 2 {
        return Err(Error::LineupNotPairable(lineup.len()));
    }
    check_entrants(pattern, lineup.entrants())?;
    let winners = lineup
        .entrants()
        .chunks_exact(2)
        .map(|pair| match_of(pattern, pair[0], pair[1]))
        .collect();
    Ok(Lineup { entrants: winners })
}

fn match_of(pattern: &PreferencePattern, a: Candidate, b: Candidate) -> Candidate {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    pattern.side_unchecked(lo, hi).pick(lo, hi)
}

/// Champion of the full-field tournament seeded by `bracket`.
pub fn winner(pattern: &PreferencePattern, bracket: &Bracket) -> Result<Candidate> {
    if bracket.n_exponent() != pattern.n_exponent() {
        return Err(Error::SizeMismatch {
            left: pattern.n_exponent(),
            right: bracket.n_exponent(),
        });
    }
    let mut arena = bracket.positions().to_vec();
    Ok(run_in_place(pattern, &mut arena))
}

/// Champion plus the full match log, round by round.
pub fn winner_with_log(
    pattern: &PreferencePattern,
    bracket: &Bracket,
) -> Result<(Candidate, Vec<MatchRecord>)> {
    if bracket.n_exponent() != pattern.n_exponent() {
        return Err(Error::SizeMismatch {
            left: pattern.n_exponent(),
            right: bracket.n_exponent(),
        });
    }
    let mut log = Vec::with_capacity(bracket.positions().len() - 1);
    let mut lineup = Lineup::from_bracket(bracket);
    let mut round = 1;
    while lineup.len() > 1 {
        for pair in lineup.entrants().chunks_exact(2) {
            log.push(MatchRecord {
                round,
                left: pair[0],
                right: pair[1],
                winner: match_of(pattern, pair[0], pair[1]),
            });
        }
        lineup = play_round(pattern, &lineup)?;
        round += 1;
    }
    Ok((lineup.entrants()[0], log))
}

/// Runs a tournament over `arena` in place; `arena` holds the round-one
/// board order and is clobbered.
fn run_in_place(pattern: &PreferencePattern, arena: &mut [Candidate]) -> Candidate {
    let mut len = arena.len();
    while len > 1 {
        for k in 0..len / 2 {
            arena[k] = match_of(pattern, arena[2 * k], arena[2 * k + 1]);
        }
        len /= 2;
    }
    arena[0]
}

/// Largest field for which exhaustive winner enumeration is offered.
pub const WINNER_SET_MAX_CANDIDATES: u32 = 8;

/// Every candidate that wins under some bracket, by enumerating all `m!`
/// brackets. Limited to `m <= 8`; for larger fields the synthesis routines
/// produce a winning bracket for any chosen target directly.
pub fn winner_set(pattern: &PreferencePattern) -> Result<BTreeSet<Candidate>> {
    let m = pattern.candidate_count();
    if m > WINNER_SET_MAX_CANDIDATES {
        return Err(Error::EnumerationTooLarge(m));
    }
    let mut out = BTreeSet::new();
    for mut arena in (1..=m).permutations(m as usize) {
        out.insert(run_in_place(pattern, &mut arena));
    }
    Ok(out)
}

/// Same winner set from the reduced enumeration that visits one bracket per
/// equivalence class under within-round swaps (`m!/2^(m-1)` brackets).
pub fn winner_set_reduced(pattern: &PreferencePattern) -> Result<BTreeSet<Candidate>> {
    let m = pattern.candidate_count();
    if m > WINNER_SET_MAX_CANDIDATES {
        return Err(Error::EnumerationTooLarge(m));
    }
    let field: Vec<Candidate> = (1..=m).collect();
    let mut out = BTreeSet::new();
    for mut arena in canonical_lineups(&field) {
        out.insert(run_in_place(pattern, &mut arena));
    }
    Ok(out)
}

/// All board orders over `field` in which the first element of every
/// (sub)bracket is its smallest entrant. Each equivalence class of brackets
/// with the same match structure contributes exactly one representative.
fn canonical_lineups(field: &[Candidate]) -> Vec<Vec<Candidate>> {
    if field.len() == 1 {
        return vec![field.to_vec()];
    }
    let half = field.len() / 2;
    let anchor = field[0];
    let rest = &field[1..];
    let mut out = Vec::new();
    for left_tail in rest.iter().copied().combinations(half - 1) {
        let mut left_set = Vec::with_capacity(half);
        left_set.push(anchor);
        left_set.extend(&left_tail);
        let right_set: Vec<Candidate> = rest
            .iter()
            .copied()
            .filter(|c| !left_tail.contains(c))
            .collect();
        for left in canonical_lineups(&left_set) {
            for right in canonical_lineups(&right_set) {
                let mut board = left.clone();
                board.extend(&right);
                out.push(board);
            }
        }
    }
    out
}

/// Result of checking every pattern over a tiny field for full coverage.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CoverageReport {
    pub n_exponent: u32,
    pub candidate_count: u32,
    pub patterns_checked: u64,
    /// Largest winner-set size seen across all patterns.
    pub max_coverage: u32,
}

impl CoverageReport {
    /// Whether some pattern made every candidate a feasible champion.
    pub fn full_coverage_found(&self) -> bool {
        self.max_coverage == self.candidate_count
    }
}

/// Checks by exhaustion that no pattern over `2^n` candidates (`n` of 1
/// or 2, the one- and two-round cases) makes every candidate a feasible
/// champion.
pub fn coverage_impossible(n_exponent: u32) -> Result<CoverageReport> {
    if !(1..=2).contains(&n_exponent) {
        return Err(Error::CoverageRegime(n_exponent));
    }
    let m = 1u32 << n_exponent;
    let pairs = pair_count_for(m) as u32;
    let mut max_coverage = 0u32;
    for mask in 0u64..(1u64 << pairs) {
        let pattern = PreferencePattern::from_fn(n_exponent, |i, j| {
            if mask >> crate::model::pair_index(i, j) & 1 == 1 {
                Side::Left
            } else {
                Side::Right
            }
        })?;
        let coverage = winner_set(&pattern)?.len() as u32;
        max_coverage = max_coverage.max(coverage);
    }
    Ok(CoverageReport {
        n_exponent,
        candidate_count: m,
        patterns_checked: 1 << pairs,
        max_coverage,
    })
}
