//! Compiling small voting profiles whose pairwise majority relation is
//! exactly a given level of the pattern family.
//!
//! The level-0 profile is a fixed list of ten rankings over 8 candidates.
//! Each level up doubles the field: four fresh rows built from parity
//! blocks force the cross-pair orientations, and the previous profile is
//! interleaved with a translated copy of itself so that the two halves keep
//! their old internal margins while contributing nothing across. The result
//! has `4n + 10` rows; dropping the last row flips all margins from even to
//! odd, which removes ties without changing any majority direction.

use crate::model::{Candidate, Error, PreferenceList, Result, VotingProfile};
use crate::pattern::DEFAULT_LEVEL_CAP;

/// The ten-row profile over 8 candidates whose majority relation is the
/// seed pattern.
const STEARNS_ROWS: [[Candidate; 8]; 10] = [
    [8, 1, 5, 2, 3, 4, 6, 7],
    [2, 7, 6, 4, 1, 3, 5, 8],
    [2, 7, 3, 6, 4, 5, 8, 1],
    [4, 1, 3, 8, 5, 6, 7, 2],
    [3, 5, 2, 6, 7, 1, 4, 8],
    [6, 8, 4, 1, 5, 7, 2, 3],
    [6, 7, 3, 4, 8, 1, 2, 5],
    [8, 5, 2, 7, 1, 4, 3, 6],
    [7, 8, 5, 6, 3, 4, 1, 2],
    [1, 2, 3, 4, 5, 6, 7, 8],
];

/// The fixed ten-voter profile generating the seed pattern by majority.
pub fn stearns_base() -> VotingProfile {
    let rows = STEARNS_ROWS
        .iter()
        .map(|row| PreferenceList::new(row.to_vec()).expect("fixed rows are strict rankings"))
        .collect();
    VotingProfile::new(rows).expect("fixed rows share one candidate set")
}

/// A ranking segment reversed, used to build cancelling voter pairs.
pub fn reversed(segment: &[Candidate]) -> Vec<Candidate> {
    segment.iter().rev().copied().collect()
}

/// The four parity segments of a doubled field of `2^(n+3)` candidates:
/// odds and evens of the lower and upper halves, each ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityBlocks {
    pub lower_odd: Vec<Candidate>,
    pub lower_even: Vec<Candidate>,
    pub upper_odd: Vec<Candidate>,
    pub upper_even: Vec<Candidate>,
}

pub fn parity_blocks(level: u32) -> ParityBlocks {
    let half = 1u32 << (level + 2);
    let full = 2 * half;
    ParityBlocks {
        lower_odd: (1..=half).step_by(2).collect(),
        lower_even: (2..=half).step_by(2).collect(),
        upper_odd: (half + 1..=full).step_by(2).collect(),
        upper_even: (half + 2..=full).step_by(2).collect(),
    }
}

/// Four voters over `2^(n+3)` candidates whose joint margins are zero
/// within each half and exactly two in favor of the parity-preferred
/// candidate on every cross pair (the lower candidate when the index sum is
/// even, the upper one when it is odd).
pub fn em_gadget(level: u32) -> [PreferenceList; 4] {
    let blocks = parity_blocks(level);
    let ParityBlocks {
        lower_odd: a1,
        lower_even: a2,
        upper_odd: b1,
        upper_even: b2,
    } = blocks;
    let concat = |parts: [&[Candidate]; 4]| {
        let ranking: Vec<Candidate> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        PreferenceList::new(ranking).expect("parity segments are disjoint")
    };
    [
        concat([&a1, &b1, &a2, &b2]),
        concat([&reversed(&a2), &reversed(&b2), &reversed(&a1), &reversed(&b1)]),
        concat([&b1, &a2, &b2, &a1]),
        concat([&reversed(&b2), &reversed(&a1), &reversed(&b1), &reversed(&a2)]),
    ]
}

/// The profile with every candidate translated up by `offset`.
pub fn shift(profile: &VotingProfile, offset: u32) -> VotingProfile {
    let rows = profile
        .rows()
        .iter()
        .map(|row| {
            let ranking = row.ranking().iter().map(|&c| c + offset).collect();
            PreferenceList::new(ranking).expect("translation preserves distinctness")
        })
        .collect();
    VotingProfile::new(rows).expect("translation preserves the shared candidate set")
}

/// Merges equally sized blocks over disjoint candidate sets into one
/// profile: voter `s` ranks the blocks first-to-last when `s` is odd and
/// last-to-first when `s` is even, keeping each block's own row `s` order
/// inside. With an even number of rows this leaves every cross-block margin
/// at zero while within-block margins carry over unchanged.
pub fn interleave(blocks: &[VotingProfile]) -> Result<VotingProfile> {
    if blocks.len() < 2 {
        return Err(Error::TooFewBlocks(blocks.len()));
    }
    let row_count = blocks[0].row_count();
    for block in &blocks[1..] {
        if block.row_count() != row_count {
            return Err(Error::RowCountMismatch {
                expected: row_count,
                found: block.row_count(),
            });
        }
    }
    if row_count % 2 != 0 {
        return Err(Error::OddRowCount(row_count));
    }
    let mut seen = std::collections::BTreeSet::new();
    for block in blocks {
        for c in block.candidate_set() {
            if !seen.insert(c) {
                return Err(Error::OverlappingBlocks(c));
            }
        }
    }
    let mut rows = Vec::with_capacity(row_count);
    for s in 0..row_count {
        let mut ranking = Vec::new();
        let push = |ranking: &mut Vec<Candidate>, block: &VotingProfile| {
            ranking.extend_from_slice(block.rows()[s].ranking());
        };
        if s % 2 == 0 {
            for block in blocks {
                push(&mut ranking, block);
            }
        } else {
            for block in blocks.iter().rev() {
                push(&mut ranking, block);
            }
        }
        rows.push(PreferenceList::new(ranking).expect("blocks are disjoint"));
    }
    VotingProfile::new(rows)
}

/// The `4n + 10` row profile over `2^(n+3)` candidates whose majority
/// relation is family level `n`. All its margins are even and at least two
/// in absolute value.
pub fn build_profile(level: u32) -> Result<VotingProfile> {
    if level > DEFAULT_LEVEL_CAP {
        return Err(Error::LevelAboveCap { level, cap: DEFAULT_LEVEL_CAP });
    }
    let mut profile = stearns_base();
    for k in 1..=level {
        let half = 1u32 << (k + 2);
        let shifted = shift(&profile, half);
        let merged = interleave(&[profile, shifted])?;
        let mut rows: Vec<PreferenceList> = em_gadget(k).into();
        rows.extend_from_slice(merged.rows());
        profile = VotingProfile::new(rows)?;
    }
    Ok(profile)
}

/// Drops the last row. Applied to [`build_profile`] output this leaves an
/// odd voter count, so no pairwise tie is possible, and every majority
/// direction survives because the even margins were at least two.
pub fn trim(profile: &VotingProfile) -> Result<VotingProfile> {
    let rows = profile.rows();
    if rows.len() <= 1 {
        return Err(Error::EmptyProfile);
    }
    VotingProfile::new(rows[..rows.len() - 1].to_vec())
}

/// Majority graph of the trimmed level profile; convenience for the common
/// "generate the family from an odd electorate" path.
pub fn trimmed_profile(level: u32) -> Result<VotingProfile> {
    trim(&build_profile(level)?)
}

/// Expected row count of [`build_profile`] at a level.
pub fn profile_row_count(level: u32) -> usize {
    4 * level as usize + 10
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{eta, eta_base};
    use proptest::prelude::*;

    #[test]
    fn stearns_rows_match_the_table() {
        let p = stearns_base();
        assert_eq!(p.row_count(), 10);
        assert_eq!(p.rows()[0].ranking(), &[8, 1, 5, 2, 3, 4, 6, 7]);
        assert_eq!(p.rows()[9].ranking(), &[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(p.margin(1, 2).unwrap(), 2);
    }

    #[test]
    fn stearns_majority_is_the_seed_pattern() {
        assert_eq!(stearns_base().majority_graph().unwrap(), eta_base());
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(reversed(&[2, 4, 6, 8]), vec![8, 6, 4, 2]);
        assert_eq!(reversed(&[5]), vec![5]);
        let blocks = parity_blocks(1);
        assert_eq!(reversed(&blocks.lower_even), vec![8, 6, 4, 2]);
        let twice = reversed(&reversed(&blocks.upper_odd));
        assert_eq!(twice, blocks.upper_odd);
    }

    #[test]
    fn parity_block_examples() {
        let one = parity_blocks(1);
        assert_eq!(one.lower_odd, vec![1, 3, 5, 7]);
        assert_eq!(one.upper_even, vec![10, 12, 14, 16]);
        let zero = parity_blocks(0);
        assert_eq!(zero.upper_odd, vec![5, 7]);
        assert_eq!(zero.lower_even, vec![2, 4]);
    }

    #[test]
    fn gadget_rows_at_level_one() {
        let g = em_gadget(1);
        assert_eq!(
            g[0].ranking(),
            &[1, 3, 5, 7, 9, 11, 13, 15, 2, 4, 6, 8, 10, 12, 14, 16]
        );
        assert_eq!(
            g[3].ranking(),
            &[16, 14, 12, 10, 7, 5, 3, 1, 15, 13, 11, 9, 8, 6, 4, 2]
        );
    }

    #[test]
    fn gadget_margins_cancel_within_halves_and_push_across() {
        for level in 0..=2u32 {
            let g = em_gadget(level);
            let profile = VotingProfile::new(g.to_vec()).unwrap();
            let half = 1u32 << (level + 2);
            let full = 2 * half;
            profile
                .for_each_pair_margin(|i, j, margin| {
                    if j <= half || i > half {
                        assert_eq!(margin, 0, "within-half pair ({i},{j}) at level {level}");
                    } else {
                        let expect = if (i + j) % 2 == 0 { 2 } else { -2 };
                        assert_eq!(margin, expect, "cross pair ({i},{j}) at level {level}");
                    }
                })
                .unwrap();
            assert_eq!(profile.candidate_count(), full);
        }
    }

    #[test]
    fn shift_translates_rows() {
        let p = stearns_base();
        let s = shift(&p, 8);
        assert_eq!(s.rows()[0].ranking(), &[16, 9, 13, 10, 11, 12, 14, 15]);
        assert_eq!(s.candidates(), (9..=16).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn shift_preserves_margins() {
        let p = stearns_base();
        let s = shift(&p, 100);
        for i in 1..=8u32 {
            for j in 1..=8u32 {
                if i != j {
                    assert_eq!(p.margin(i, j).unwrap(), s.margin(i + 100, j + 100).unwrap());
                }
            }
        }
    }

    #[test]
    fn interleave_tiny_example() {
        let a = VotingProfile::new(vec![
            PreferenceList::new(vec![1, 2]).unwrap(),
            PreferenceList::new(vec![2, 1]).unwrap(),
        ])
        .unwrap();
        let b = VotingProfile::new(vec![
            PreferenceList::new(vec![3, 4]).unwrap(),
            PreferenceList::new(vec![4, 3]).unwrap(),
        ])
        .unwrap();
        let merged = interleave(&[a, b]).unwrap();
        assert_eq!(merged.rows()[0].ranking(), &[1, 2, 3, 4]);
        assert_eq!(merged.rows()[1].ranking(), &[4, 3, 2, 1]);
    }

    #[test]
    fn interleave_rejects_bad_blocks() {
        let a = VotingProfile::new(vec![
            PreferenceList::new(vec![1, 2]).unwrap(),
            PreferenceList::new(vec![2, 1]).unwrap(),
        ])
        .unwrap();
        assert_eq!(interleave(&[a.clone()]), Err(Error::TooFewBlocks(1)));
        assert_eq!(
            interleave(&[a.clone(), a.clone()]),
            Err(Error::OverlappingBlocks(1))
        );

        let odd = VotingProfile::new(vec![PreferenceList::new(vec![3, 4]).unwrap()]).unwrap();
        assert_eq!(
            interleave(&[a.clone(), odd.clone()]),
            Err(Error::RowCountMismatch { expected: 2, found: 1 })
        );
        assert_eq!(
            interleave(&[VotingProfile::new(vec![PreferenceList::new(vec![1, 2]).unwrap()]).unwrap(), odd]),
            Err(Error::OddRowCount(1))
        );
    }

    #[test]
    fn interleave_merges_the_shifted_base_into_known_rows() {
        let base = stearns_base();
        let merged = interleave(&[base.clone(), shift(&base, 8)]).unwrap();
        assert_eq!(merged.row_count(), 10);
        assert_eq!(
            merged.rows()[0].ranking(),
            &[8, 1, 5, 2, 3, 4, 6, 7, 16, 9, 13, 10, 11, 12, 14, 15]
        );
        assert_eq!(
            merged.rows()[9].ranking(),
            &[9, 10, 11, 12, 13, 14, 15, 16, 1, 2, 3, 4, 5, 6, 7, 8]
        );
    }

    #[test]
    fn profile_row_counts_grow_by_four() {
        for level in 0..=3u32 {
            let p = build_profile(level).unwrap();
            assert_eq!(p.row_count(), profile_row_count(level));
            assert_eq!(p.candidate_count(), 1 << (level + 3));
        }
        assert!(matches!(
            build_profile(DEFAULT_LEVEL_CAP + 1),
            Err(Error::LevelAboveCap { .. })
        ));
    }

    #[test]
    fn level_one_profile_rows_are_as_expected() {
        let p = build_profile(1).unwrap();
        assert_eq!(p.row_count(), 14);
        assert_eq!(
            p.rows()[0].ranking(),
            &[1, 3, 5, 7, 9, 11, 13, 15, 2, 4, 6, 8, 10, 12, 14, 16]
        );
        assert_eq!(
            p.rows()[4].ranking(),
            &[8, 1, 5, 2, 3, 4, 6, 7, 16, 9, 13, 10, 11, 12, 14, 15]
        );
        assert_eq!(
            p.rows()[13].ranking(),
            &[9, 10, 11, 12, 13, 14, 15, 16, 1, 2, 3, 4, 5, 6, 7, 8]
        );
    }

    #[test]
    fn profiles_generate_their_family_level() {
        for level in 0..=2u32 {
            let p = build_profile(level).unwrap();
            assert_eq!(p.majority_graph().unwrap(), eta(level).unwrap(), "level {level}");
        }
    }

    #[test]
    fn margins_are_even_and_bounded_away_from_zero() {
        for level in 0..=2u32 {
            let p = build_profile(level).unwrap();
            p.for_each_pair_margin(|i, j, margin| {
                assert_eq!(margin.rem_euclid(2), 0, "pair ({i},{j}) at level {level}");
                assert!(margin.abs() >= 2, "pair ({i},{j}) at level {level}");
            })
            .unwrap();
        }
    }

    #[test]
    fn trimming_drops_one_row_and_keeps_the_majority() {
        for level in 0..=2u32 {
            let full = build_profile(level).unwrap();
            let trimmed = trim(&full).unwrap();
            assert_eq!(trimmed.row_count(), full.row_count() - 1);
            assert_eq!(trimmed.row_count() % 2, 1);
            assert_eq!(trimmed.majority_graph().unwrap(), eta(level).unwrap());
            trimmed
                .for_each_pair_margin(|i, j, margin| {
                    assert_eq!(margin.rem_euclid(2), 1, "pair ({i},{j})");
                })
                .unwrap();
        }
        assert_eq!(trimmed_profile(1).unwrap().row_count(), 13);
    }

    #[test]
    fn trim_refuses_to_empty_a_profile() {
        let single = VotingProfile::new(vec![PreferenceList::new(vec![1, 2]).unwrap()]).unwrap();
        assert_eq!(trim(&single), Err(Error::EmptyProfile));
    }

    proptest! {
        #[test]
        fn interleaved_cross_margins_vanish(seed in 0u64..5000, blocks in 2usize..=3, rows in 1usize..=2) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let sizes = [2usize, 3, 4];
            let mut start = 1u32;
            let mut parts = Vec::new();
            for b in 0..blocks {
                let size = sizes[(seed as usize + b) % sizes.len()];
                let set: Vec<Candidate> = (start..start + size as u32).collect();
                start += size as u32;
                let mut rs = Vec::new();
                for _ in 0..2 * rows {
                    let mut ranking = set.clone();
                    ranking.shuffle(&mut rng);
                    rs.push(PreferenceList::new(ranking).unwrap());
                }
                parts.push(VotingProfile::new(rs).unwrap());
            }
            let merged = interleave(&parts).unwrap();
            for a in 0..parts.len() {
                for b in (a + 1)..parts.len() {
                    for &i in parts[a].candidates() {
                        for &j in parts[b].candidates() {
                            prop_assert_eq!(merged.margin(i, j).unwrap(), 0);
                        }
                    }
                }
            }
            // Within-block margins carry over unchanged.
            for part in &parts {
                for &i in part.candidates() {
                    for &j in part.candidates() {
                        if i != j {
                            prop_assert_eq!(merged.margin(i, j).unwrap(), part.margin(i, j).unwrap());
                        }
                    }
                }
            }
        }
    }
}
