//! Constructing a bracket that makes any chosen candidate the knockout
//! champion under the matching level of the pattern family.
//!
//! Two equivalent routes are provided: an inductive composition that glues
//! winning brackets of the two halves of the field together, and a closed
//! form that fills every slot directly from a fixed 8x8 base table. Both
//! run in time linear in the board size.

use crate::model::{Bracket, Candidate, Error, Result};

/// 1-based index of the aligned block of eight candidates containing `c`.
pub type ClassIndex = u32;

/// Class of a candidate or board slot: `ceil(c / 8)`.
pub fn class_of(c: Candidate) -> ClassIndex {
    c.div_ceil(8)
}

/// Largest size exponent accepted by the synthesis routines, matching the
/// largest representable dense pattern.
pub const MAX_SYNTHESIS_EXPONENT: u32 = crate::model::MAX_PATTERN_EXPONENT;

/// Winning brackets over the 8-candidate seed pattern; row `k-1` crowns
/// candidate `k`.
const BASE_TABLE: [[Candidate; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, 3, 4, 1, 6, 7, 8, 5],
    [3, 6, 4, 1, 8, 2, 5, 7],
    [4, 1, 8, 2, 5, 6, 7, 3],
    [5, 6, 7, 8, 2, 3, 4, 1],
    [6, 7, 8, 5, 1, 2, 3, 4],
    [7, 8, 1, 2, 3, 5, 6, 4],
    [8, 1, 5, 6, 2, 3, 7, 4],
];

/// The eight base brackets over the seed field; element `k-1` makes
/// candidate `k` champion.
pub fn base_brackets() -> [Bracket; 8] {
    BASE_TABLE.map(|row| Bracket::new(row.to_vec()).expect("base table rows are permutations of [8]"))
}

/// Glues a bracket over the lower half of a doubled field to a bracket over
/// the upper half: the lower board fills slots `1..=m`, the upper board
/// slots `m+1..=2m`, so the two sub-champions meet in the final.
///
/// The upper bracket must already be expressed in upper-half candidates
/// (`m+1..=2m`); both halves must have the same size.
pub fn compose_brackets(lower: &Bracket, upper: &Bracket) -> Result<Bracket> {
    if lower.candidate_count() != upper.candidate_count() {
        return Err(Error::SizeMismatch {
            left: lower.n_exponent(),
            right: upper.n_exponent(),
        });
    }
    let m = lower.candidate_count();
    let mut board = Vec::with_capacity(2 * m as usize);
    board.extend_from_slice(lower.positions());
    board.extend(upper.positions().iter().map(|&c| c + m));
    Bracket::new(board)
}

fn check_synthesis_args(n_exponent: u32, target: Candidate) -> Result<()> {
    if n_exponent < 3 {
        return Err(Error::SynthesisRegime(n_exponent));
    }
    if n_exponent > MAX_SYNTHESIS_EXPONENT {
        return Err(Error::ExponentAboveCap {
            exponent: n_exponent,
            cap: MAX_SYNTHESIS_EXPONENT,
        });
    }
    let m = 1u32 << n_exponent;
    if target == 0 {
        return Err(Error::ZeroCandidate);
    }
    if target > m {
        return Err(Error::CandidateOutOfRange { candidate: target, count: m });
    }
    Ok(())
}

/// Bracket crowning `target` over `2^n` candidates (`n >= 3`), built by
/// composing half-field brackets.
///
/// A target in the lower half keeps its own winning bracket there and meets
/// the smallest upper-half candidate of its own parity in the final, so the
/// final's index sum is even and the lower champion prevails. A target in
/// the upper half meets the smallest lower-half candidate of the opposite
/// parity, making the sum odd.
pub fn bracket_for_winner_inductive(n_exponent: u32, target: Candidate) -> Result<Bracket> {
    check_synthesis_args(n_exponent, target)?;
    Ok(inductive_inner(n_exponent, target))
}

fn inductive_inner(n_exponent: u32, target: Candidate) -> Bracket {
    if n_exponent == 3 {
        return Bracket::new(BASE_TABLE[(target - 1) as usize].to_vec())
            .expect("base table rows are permutations of [8]");
    }
    let half = 1u32 << (n_exponent - 1);
    let (lower_target, upper_target) = if target <= half {
        // Companion in the upper half: slot-local index 1 if the target is
        // odd, 2 if even (half is even, so parities line up).
        (target, if target % 2 == 0 { 2 } else { 1 })
    } else {
        (if target % 2 == 0 { 1 } else { 2 }, target - half)
    };
    let lower = inductive_inner(n_exponent - 1, lower_target);
    let upper = inductive_inner(n_exponent - 1, upper_target);
    compose_brackets(&lower, &upper).expect("halves have equal size by construction")
}

/// Bracket crowning `target`, written down slot by slot.
///
/// Slot `l` belongs to class `ceil(l / 8)`. Within the target's own class
/// the base row for the target's residue is used; other classes use base
/// row 1 or 2 depending on whether they sit below or above the target's
/// class and on the target's parity. Every slot stays inside its own class.
pub fn bracket_for_winner_explicit(n_exponent: u32, target: Candidate) -> Result<Bracket> {
    check_synthesis_args(n_exponent, target)?;
    let m = 1u32 << n_exponent;
    let target_class = class_of(target);
    let even = target % 2 == 0;
    let mut board = Vec::with_capacity(m as usize);
    for l in 1..=m {
        let slot_class = class_of(l);
        let base = 8 * (slot_class - 1);
        let row = if slot_class == target_class {
            target - base
        } else if slot_class < target_class {
            if even {
                1
            } else {
                2
            }
        } else if even {
            2
        } else {
            1
        };
        board.push(BASE_TABLE[(row - 1) as usize][(l - base - 1) as usize] + base);
    }
    Bracket::new(board)
}

/// How a winning bracket is synthesized.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SynthesisMethod {
    Explicit,
    Inductive,
}

/// Dispatches to the chosen synthesis routine.
pub fn bracket_for_winner(
    n_exponent: u32,
    target: Candidate,
    method: SynthesisMethod,
) -> Result<Bracket> {
    match method {
        SynthesisMethod::Explicit => bracket_for_winner_explicit(n_exponent, target),
        SynthesisMethod::Inductive => bracket_for_winner_inductive(n_exponent, target),
    }
}

/// Whether candidate 1 sits in the lower half of the board and candidate
/// `2^(n-1) + 1` in the upper half. Both are champions of their halves
/// under the family pattern, so a bracket with this property sends the two
/// dominant seeds to opposite sides. Needs at least 16 candidates.
pub fn check_top_seeds(bracket: &Bracket) -> Result<bool> {
    let n = bracket.n_exponent();
    if n < 4 {
        return Err(Error::TopSeedRegime(n));
    }
    let half = (bracket.candidate_count() / 2) as usize;
    let first = bracket.board_position(1)?;
    let second = bracket.board_position(1 + half as u32)?;
    Ok(first <= half && second > half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{eta, eta_base};
    use crate::tournament::winner;

    #[test]
    fn base_brackets_crown_their_index() {
        let p = eta_base();
        for (k, bracket) in base_brackets().iter().enumerate() {
            assert_eq!(winner(&p, bracket).unwrap(), k as u32 + 1);
        }
    }

    #[test]
    fn base_bracket_examples() {
        let brackets = base_brackets();
        assert_eq!(brackets[2].positions(), &[3, 6, 4, 1, 8, 2, 5, 7]);
        assert_eq!(brackets[7].positions(), &[8, 1, 5, 6, 2, 3, 7, 4]);
    }

    #[test]
    fn composition_concatenates_and_shifts() {
        let brackets = base_brackets();
        let composed = compose_brackets(&brackets[1], &brackets[2]).unwrap();
        assert_eq!(
            composed.positions(),
            &[2, 3, 4, 1, 6, 7, 8, 5, 11, 14, 12, 9, 16, 10, 13, 15]
        );
        // Half-champions 2 and 11 meet in the final; 2 + 11 is odd, so the
        // upper champion takes it.
        assert_eq!(winner(&eta(1).unwrap(), &composed).unwrap(), 11);
    }

    #[test]
    fn composition_of_tiny_boards() {
        let a = Bracket::new(vec![1, 2]).unwrap();
        let composed = compose_brackets(&a, &a).unwrap();
        assert_eq!(composed.positions(), &[1, 2, 3, 4]);
    }

    #[test]
    fn composition_rejects_uneven_halves() {
        let a = Bracket::new(vec![1, 2]).unwrap();
        let b = Bracket::new(vec![1, 2, 3, 4]).unwrap();
        assert!(matches!(
            compose_brackets(&a, &b),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn inductive_reduces_to_the_base_table() {
        let brackets = base_brackets();
        for k in 1..=8u32 {
            assert_eq!(
                bracket_for_winner_inductive(3, k).unwrap(),
                brackets[(k - 1) as usize]
            );
        }
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(
            bracket_for_winner_explicit(4, 2).unwrap().positions(),
            &[2, 3, 4, 1, 6, 7, 8, 5, 10, 11, 12, 9, 14, 15, 16, 13]
        );
        assert_eq!(
            bracket_for_winner_explicit(4, 11).unwrap().positions(),
            &[2, 3, 4, 1, 6, 7, 8, 5, 11, 14, 12, 9, 16, 10, 13, 15]
        );
        assert_eq!(
            bracket_for_winner_explicit(3, 7).unwrap().positions(),
            &[7, 8, 1, 2, 3, 5, 6, 4]
        );
    }

    #[test]
    fn the_two_routes_build_the_same_board() {
        for n in 3..=7u32 {
            for target in 1..=(1u32 << n) {
                assert_eq!(
                    bracket_for_winner_explicit(n, target).unwrap(),
                    bracket_for_winner_inductive(n, target).unwrap(),
                    "n={n} target={target}"
                );
            }
        }
    }

    #[test]
    fn synthesized_brackets_win_for_their_target() {
        for level in 0..=2u32 {
            let p = eta(level).unwrap();
            let n = level + 3;
            for target in 1..=(1u32 << n) {
                let b = bracket_for_winner_inductive(n, target).unwrap();
                assert_eq!(winner(&p, &b).unwrap(), target, "n={n} target={target}");
            }
        }
    }

    #[test]
    fn specific_large_targets_win() {
        let p = eta(2).unwrap();
        let b = bracket_for_winner_inductive(5, 17).unwrap();
        assert_eq!(winner(&p, &b).unwrap(), 17);
        let b = bracket_for_winner_explicit(5, 32).unwrap();
        assert_eq!(winner(&p, &b).unwrap(), 32);
    }

    #[test]
    fn slots_stay_in_their_class() {
        for n in 3..=8u32 {
            let m = 1u32 << n;
            for target in [1, 2, m / 2, m / 2 + 1, m - 1, m] {
                let b = bracket_for_winner_explicit(n, target).unwrap();
                for (slot0, &c) in b.positions().iter().enumerate() {
                    assert_eq!(class_of(slot0 as u32 + 1), class_of(c));
                }
            }
        }
    }

    #[test]
    fn synthesis_rejects_bad_arguments() {
        assert_eq!(
            bracket_for_winner_explicit(2, 1),
            Err(Error::SynthesisRegime(2))
        );
        assert_eq!(
            bracket_for_winner_inductive(4, 17),
            Err(Error::CandidateOutOfRange { candidate: 17, count: 16 })
        );
        assert_eq!(bracket_for_winner_explicit(4, 0), Err(Error::ZeroCandidate));
        assert!(matches!(
            bracket_for_winner_explicit(16, 1),
            Err(Error::ExponentAboveCap { .. })
        ));
    }

    #[test]
    fn top_seed_split_holds_for_synthesized_boards() {
        for n in 4..=6u32 {
            for target in 1..=(1u32 << n) {
                let b = bracket_for_winner_explicit(n, target).unwrap();
                assert!(check_top_seeds(&b).unwrap(), "n={n} target={target}");
            }
        }
    }

    #[test]
    fn top_seed_examples() {
        let identity = Bracket::new((1..=16).collect()).unwrap();
        assert!(check_top_seeds(&identity).unwrap());

        let swapped = Bracket::new((9..=16).chain(1..=8).collect()).unwrap();
        assert!(!check_top_seeds(&swapped).unwrap());

        let eight = Bracket::new((1..=8).collect()).unwrap();
        assert_eq!(check_top_seeds(&eight), Err(Error::TopSeedRegime(3)));
    }

    #[test]
    fn dispatch_matches_the_direct_calls() {
        assert_eq!(
            bracket_for_winner(4, 11, SynthesisMethod::Explicit).unwrap(),
            bracket_for_winner_explicit(4, 11).unwrap()
        );
        assert_eq!(
            bracket_for_winner(4, 11, SynthesisMethod::Inductive).unwrap(),
            bracket_for_winner_inductive(4, 11).unwrap()
        );
    }
}
