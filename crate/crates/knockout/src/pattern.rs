//! The recursive family of preference patterns under which every candidate
//! is a feasible knockout champion.
//!
//! Level `n` of the family spans `2^(n+3)` candidates. Level 0 is a fixed
//! seed pattern over 8 candidates; level `n` is assembled from two copies of
//! level `n-1` (the second translated onto the upper half of the field) with
//! every cross pair oriented by parity: when the indices sum to an even
//! number the lower-half candidate prevails, otherwise the upper-half
//! candidate does.

use crate::model::{Candidate, Error, PreferencePattern, Result, Side};

/// Default cap on the family level accepted by [`eta`].
pub const DEFAULT_LEVEL_CAP: u32 = 12;

/// Largest level stored densely; above this the pattern answers orientation
/// queries straight from the recursion.
pub(crate) const DENSE_LEVEL_MAX: u32 = 7;

/// Orientations of the level-0 seed pattern, as `(winner, loser)` pairs.
const SEED_EDGES: [(Candidate, Candidate); 28] = [
    (1, 2),
    (1, 3),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 6),
    (2, 7),
    (3, 4),
    (3, 5),
    (3, 6),
    (3, 8),
    (4, 1),
    (4, 5),
    (4, 8),
    (5, 2),
    (5, 6),
    (5, 7),
    (6, 1),
    (6, 4),
    (6, 7),
    (6, 8),
    (7, 1),
    (7, 3),
    (7, 4),
    (7, 8),
    (8, 1),
    (8, 2),
    (8, 5),
];

fn seed_side(i: Candidate, j: Candidate) -> Side {
    debug_assert!(0 < i && i < j && j <= 8);
    for &(w, l) in &SEED_EDGES {
        if (w, l) == (i, j) {
            return Side::Left;
        }
        if (w, l) == (j, i) {
            return Side::Right;
        }
    }
    unreachable!("seed edge table covers all pairs over [8]")
}

/// Orientation of the canonical pair `(i, j)`, `i < j`, at the given family
/// level, answered by descending the recursion.
pub(crate) fn rule_side(level: u32, i: Candidate, j: Candidate) -> Side {
    debug_assert!(0 < i && i < j && j <= 1u32 << (level + 3));
    let (mut level, mut i, mut j) = (level, i, j);
    while level > 0 {
        let half = 1u32 << (level + 2);
        if j <= half {
            level -= 1;
        } else if i > half {
            i -= half;
            j -= half;
            level -= 1;
        } else {
            return if (i + j) % 2 == 0 { Side::Left } else { Side::Right };
        }
    }
    seed_side(i, j)
}

/// The level-0 seed pattern over 8 candidates.
pub fn eta_base() -> PreferencePattern {
    eta(0).expect("level 0 is below every cap")
}

/// Level `n` of the family, over `2^(n+3)` candidates.
pub fn eta(level: u32) -> Result<PreferencePattern> {
    eta_with_cap(level, DEFAULT_LEVEL_CAP)
}

/// Same as [`eta`] with an explicit level cap for callers that accept the
/// memory and query cost of larger patterns.
pub fn eta_with_cap(level: u32, cap: u32) -> Result<PreferencePattern> {
    if level > cap {
        return Err(Error::LevelAboveCap { level, cap });
    }
    if level <= DENSE_LEVEL_MAX {
        PreferencePattern::from_fn(level + 3, |i, j| rule_side(level, i, j))
    } else {
        Ok(PreferencePattern::from_rule(level))
    }
}
