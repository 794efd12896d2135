//! Shared domain types: candidates, preference patterns, brackets, voting
//! profiles, and weighted commission samples, plus their on-disk formats.

use std::collections::BTreeSet;
use std::fmt;
use std::io;

use serde::de::Error as _;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Candidates are 1-based indices into a field of `2^n` entrants.
pub type Candidate = u32;

/// Which member of an ordered pair prevails in a pairwise comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// The first (left) element of the pair prevails.
    Left,
    /// The second (right) element of the pair prevails.
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// Selects the winning element out of an ordered pair.
    pub fn pick(self, left: Candidate, right: Candidate) -> Candidate {
        match self {
            Side::Left => left,
            Side::Right => right,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a candidate cannot be compared with itself ({0})")]
    SelfPair(Candidate),
    #[error("candidate {candidate} is outside the field of {count} candidates")]
    CandidateOutOfRange { candidate: Candidate, count: u32 },
    #[error("candidate indices are 1-based; 0 is not a candidate")]
    ZeroCandidate,
    #[error("candidate {0} appears more than once")]
    DuplicateCandidate(Candidate),
    #[error("candidate {0} is missing from a structure that must cover the full field")]
    MissingCandidate(Candidate),
    #[error("length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),
    #[error("pattern sizes differ (2^{left} vs 2^{right} candidates)")]
    SizeMismatch { left: u32, right: u32 },
    #[error("size exponent {exponent} exceeds the supported maximum {cap}")]
    ExponentAboveCap { exponent: u32, cap: u32 },
    #[error("family level {level} exceeds the configured cap {cap}")]
    LevelAboveCap { level: u32, cap: u32 },
    #[error("pair ({0}, {1}) appears more than once in the edge list")]
    DuplicatePair(Candidate, Candidate),
    #[error("edge list covers {found} pairs but a complete pattern needs {expected}")]
    IncompleteEdgeSet { expected: u64, found: u64 },
    #[error("a lineup of {0} entrants cannot be paired into matches")]
    LineupNotPairable(usize),
    #[error(
        "exhaustive winner enumeration is limited to at most 8 candidates (got {0}); \
         use the bracket synthesis routines for constructive certificates"
    )]
    EnumerationTooLarge(u32),
    #[error("full-coverage impossibility is only checked for 2 or 4 candidates (size exponent {0})")]
    CoverageRegime(u32),
    #[error("bracket synthesis needs at least 8 candidates (size exponent {0})")]
    SynthesisRegime(u32),
    #[error("the top-seed check needs at least 16 candidates (size exponent {0})")]
    TopSeedRegime(u32),
    #[error("profile rows rank different candidate sets")]
    MixedCandidateSets,
    #[error("operation requires rows over the standard candidate set 1..=m")]
    NonStandardCandidates,
    #[error("candidate {0} does not occur in this profile")]
    CandidateNotInProfile(Candidate),
    #[error("pairwise comparison ties on pair ({0}, {1})")]
    TiedPair(Candidate, Candidate),
    #[error("blocks disagree on row count (expected {expected}, found {found})")]
    RowCountMismatch { expected: usize, found: usize },
    #[error("interleaving needs an even number of rows per block (got {0})")]
    OddRowCount(usize),
    #[error("interleaving needs at least two blocks (got {0})")]
    TooFewBlocks(usize),
    #[error("candidate {0} occurs in more than one block")]
    OverlappingBlocks(Candidate),
    #[error("a voting profile must contain at least one row")]
    EmptyProfile,
    #[error("profile has {rows} rows but the commission sample has {weights} weights")]
    WeightCountMismatch { rows: usize, weights: usize },
    #[error("intensity must be positive and finite (got {0})")]
    InvalidLambda(f64),
    #[error("at least one trial is required")]
    InvalidTrials,
    #[error("bound target must be positive, finite, and below the pair count (got {0})")]
    InvalidTarget(f64),
    #[error("rate comparison requires finite rates hi > lo >= 0 (got hi={hi}, lo={lo})")]
    RateOrdering { hi: f64, lo: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Index of the unordered pair `{i, j}` (`i < j`, 1-based) in canonical
/// lexicographic order: (1,2), (1,3), (2,3), (1,4), ...
pub(crate) fn pair_index(i: Candidate, j: Candidate) -> usize {
    debug_assert!(0 < i && i < j);
    let a = (j - 1) as usize;
    a * (a - 1) / 2 + (i - 1) as usize
}

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    bits: Vec<u64>,
    len: usize,
}

impl BitMatrix {
    pub(crate) fn new(len: usize) -> Self {
        BitMatrix {
            bits: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub(crate) fn get(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, idx: usize, value: bool) {
        debug_assert!(idx < self.len);
        let mask = 1u64 << (idx % 64);
        if value {
            self.bits[idx / 64] |= mask;
        } else {
            self.bits[idx / 64] &= !mask;
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Store {
    /// One bit per unordered pair; set when the lower-indexed candidate wins.
    Dense(BitMatrix),
    /// Orientations answered on demand from the recursive family rule.
    Rule { level: u32 },
}

/// A complete asymmetric pairwise-comparison structure over `2^n` candidates:
/// for every unordered pair exactly one direction prevails.
///
/// Patterns up to 1024 candidates are stored densely (one bit per pair).
/// Members of the recursive family above that size keep only their level and
/// answer orientation queries through the defining recursion, so huge
/// patterns are cheap to hold.
#[derive(Clone)]
pub struct PreferencePattern {
    n_exponent: u32,
    store: Store,
}

/// Largest size exponent accepted for densely stored patterns.
pub const MAX_PATTERN_EXPONENT: u32 = 15;

impl PreferencePattern {
    /// Builds a pattern by asking `f` for the orientation of every canonical
    /// pair `(i, j)` with `i < j`.
    pub fn from_fn(n_exponent: u32, mut f: impl FnMut(Candidate, Candidate) -> Side) -> Result<Self> {
        check_exponent(n_exponent)?;
        let m = 1u32 << n_exponent;
        let pairs = pair_count_for(m);
        let mut bits = BitMatrix::new(pairs as usize);
        for j in 2..=m {
            for i in 1..j {
                if f(i, j) == Side::Left {
                    bits.set(pair_index(i, j), true);
                }
            }
        }
        Ok(PreferencePattern {
            n_exponent,
            store: Store::Dense(bits),
        })
    }

    /// Builds a pattern from an explicit list of directed edges
    /// `(winner, loser)`, one per unordered pair, in any order.
    pub fn from_edges(n_exponent: u32, edges: &[(Candidate, Candidate)]) -> Result<Self> {
        check_exponent(n_exponent)?;
        let m = 1u32 << n_exponent;
        let pairs = pair_count_for(m);
        let mut bits = BitMatrix::new(pairs as usize);
        let mut seen = BitMatrix::new(pairs as usize);
        for &(winner, loser) in edges {
            if winner == 0 || loser == 0 {
                return Err(Error::ZeroCandidate);
            }
            if winner == loser {
                return Err(Error::SelfPair(winner));
            }
            for c in [winner, loser] {
                if c > m {
                    return Err(Error::CandidateOutOfRange { candidate: c, count: m });
                }
            }
            let (lo, hi) = if winner < loser { (winner, loser) } else { (loser, winner) };
            let idx = pair_index(lo, hi);
            if seen.get(idx) {
                return Err(Error::DuplicatePair(lo, hi));
            }
            seen.set(idx, true);
            if winner == lo {
                bits.set(idx, true);
            }
        }
        if edges.len() as u64 != pairs {
            return Err(Error::IncompleteEdgeSet {
                expected: pairs,
                found: edges.len() as u64,
            });
        }
        Ok(PreferencePattern {
            n_exponent,
            store: Store::Dense(bits),
        })
    }

    /// Lazily stored member of the recursive family (`level` is the family
    /// index, so the pattern spans `2^(level+3)` candidates).
    pub(crate) fn from_rule(level: u32) -> Self {
        PreferencePattern {
            n_exponent: level + 3,
            store: Store::Rule { level },
        }
    }

    pub fn n_exponent(&self) -> u32 {
        self.n_exponent
    }

    /// Number of candidates, `2^n`.
    pub fn candidate_count(&self) -> u32 {
        1 << self.n_exponent
    }

    /// Number of stored orientations, `2^(n-1) * (2^n - 1)`.
    pub fn pair_count(&self) -> u64 {
        pair_count_for(self.candidate_count())
    }

    /// Which side of the ordered pair `(i, j)` prevails.
    pub fn orientation(&self, i: Candidate, j: Candidate) -> Result<Side> {
        let m = self.candidate_count();
        if i == 0 || j == 0 {
            return Err(Error::ZeroCandidate);
        }
        if i == j {
            return Err(Error::SelfPair(i));
        }
        for c in [i, j] {
            if c > m {
                return Err(Error::CandidateOutOfRange { candidate: c, count: m });
            }
        }
        Ok(if i < j {
            self.side_unchecked(i, j)
        } else {
            self.side_unchecked(j, i).flip()
        })
    }

    /// Winner of the match between `i` and `j`.
    pub fn match_winner(&self, i: Candidate, j: Candidate) -> Result<Candidate> {
        Ok(self.orientation(i, j)?.pick(i, j))
    }

    /// Orientation of a canonical pair, `i < j`, both in range.
    pub(crate) fn side_unchecked(&self, i: Candidate, j: Candidate) -> Side {
        match &self.store {
            Store::Dense(bits) => {
                if bits.get(pair_index(i, j)) {
                    Side::Left
                } else {
                    Side::Right
                }
            }
            Store::Rule { level } => crate::pattern::rule_side(*level, i, j),
        }
    }

    /// Directed edges `(winner, loser)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Candidate, Candidate)> + '_ {
        let m = self.candidate_count();
        (1..=m).flat_map(move |a| {
            (1..=m).filter_map(move |b| {
                if a == b {
                    return None;
                }
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                (self.side_unchecked(lo, hi).pick(lo, hi) == a).then_some((a, b))
            })
        })
    }

    /// The induced pattern on the first `2^n_exponent` candidates.
    pub fn restrict(&self, n_exponent: u32) -> Result<Self> {
        if n_exponent > self.n_exponent {
            return Err(Error::SizeMismatch {
                left: self.n_exponent,
                right: n_exponent,
            });
        }
        if n_exponent == self.n_exponent {
            return Ok(self.clone());
        }
        match &self.store {
            // A restriction of a family member to at least 8 candidates is
            // the family member three levels down.
            Store::Rule { .. } if n_exponent >= 3 && n_exponent - 3 > crate::pattern::DENSE_LEVEL_MAX => {
                Ok(PreferencePattern::from_rule(n_exponent - 3))
            }
            _ => PreferencePattern::from_fn(n_exponent, |i, j| self.side_unchecked(i, j)),
        }
    }

    /// Streams the pattern as JSON without materializing the edge list.
    pub fn write_json<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "{{\"n_exponent\":{},\"edges\":[", self.n_exponent)?;
        let mut first = true;
        for (a, b) in self.edges() {
            if first {
                first = false;
            } else {
                w.write_all(b",")?;
            }
            write!(w, "[{a},{b}]")?;
        }
        w.write_all(b"]}")
    }

    pub fn to_json_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_json(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("pattern JSON is ASCII")
    }
}

fn check_exponent(n_exponent: u32) -> Result<()> {
    if n_exponent == 0 || n_exponent > MAX_PATTERN_EXPONENT {
        return Err(Error::ExponentAboveCap {
            exponent: n_exponent,
            cap: MAX_PATTERN_EXPONENT,
        });
    }
    Ok(())
}

pub(crate) fn pair_count_for(m: u32) -> u64 {
    let m = m as u64;
    m * (m - 1) / 2
}

impl PartialEq for PreferencePattern {
    fn eq(&self, other: &Self) -> bool {
        if self.n_exponent != other.n_exponent {
            return false;
        }
        match (&self.store, &other.store) {
            (Store::Dense(a), Store::Dense(b)) => a == b,
            (Store::Rule { level: a }, Store::Rule { level: b }) => a == b,
            _ => {
                let m = self.candidate_count();
                (2..=m).all(|j| (1..j).all(|i| self.side_unchecked(i, j) == other.side_unchecked(i, j)))
            }
        }
    }
}

impl Eq for PreferencePattern {}

impl fmt::Debug for PreferencePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PreferencePattern")
            .field("n_exponent", &self.n_exponent)
            .field(
                "store",
                &match &self.store {
                    Store::Dense(_) => "dense".to_string(),
                    Store::Rule { level } => format!("rule(level {level})"),
                },
            )
            .finish()
    }
}

impl Serialize for PreferencePattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct EdgeSeq<'a>(&'a PreferencePattern);
        impl Serialize for EdgeSeq<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.pair_count() as usize))?;
                for edge in self.0.edges() {
                    seq.serialize_element(&edge)?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("PreferencePattern", 2)?;
        st.serialize_field("n_exponent", &self.n_exponent)?;
        st.serialize_field("edges", &EdgeSeq(self))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PreferencePattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n_exponent: u32,
            edges: Vec<(Candidate, Candidate)>,
        }
        let wire = Wire::deserialize(deserializer)?;
        PreferencePattern::from_edges(wire.n_exponent, &wire.edges).map_err(D::Error::custom)
    }
}

/// Unordered pairs on which two equal-sized patterns disagree, in canonical
/// lexicographic order. Symmetric in its arguments.
pub fn pattern_diff(
    a: &PreferencePattern,
    b: &PreferencePattern,
) -> Result<Vec<(Candidate, Candidate)>> {
    if a.n_exponent() != b.n_exponent() {
        return Err(Error::SizeMismatch {
            left: a.n_exponent(),
            right: b.n_exponent(),
        });
    }
    let m = a.candidate_count();
    let mut out = Vec::new();
    for i in 1..m {
        for j in (i + 1)..=m {
            if a.side_unchecked(i, j) != b.side_unchecked(i, j) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// A seeding of the full candidate field onto the tournament board.
///
/// Board slots `2k-1` and `2k` meet in round one; winners keep their
/// relative order into the next round.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Candidate>", into = "Vec<Candidate>")]
pub struct Bracket {
    positions: Vec<Candidate>,
}

impl Bracket {
    /// `positions` must be a permutation of `1..=len` with `len` a power of
    /// two of at least 2.
    pub fn new(positions: Vec<Candidate>) -> Result<Self> {
        let len = positions.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(len));
        }
        check_permutation_of_range(&positions)?;
        Ok(Bracket { positions })
    }

    pub fn positions(&self) -> &[Candidate] {
        &self.positions
    }

    pub fn into_positions(self) -> Vec<Candidate> {
        self.positions
    }

    pub fn candidate_count(&self) -> u32 {
        self.positions.len() as u32
    }

    pub fn n_exponent(&self) -> u32 {
        self.candidate_count().trailing_zeros()
    }

    /// 1-based board slot occupied by `c`.
    pub fn board_position(&self, c: Candidate) -> Result<usize> {
        self.positions
            .iter()
            .position(|&x| x == c)
            .map(|p| p + 1)
            .ok_or(Error::CandidateOutOfRange {
                candidate: c,
                count: self.candidate_count(),
            })
    }
}

impl TryFrom<Vec<Candidate>> for Bracket {
    type Error = Error;
    fn try_from(positions: Vec<Candidate>) -> Result<Self> {
        Bracket::new(positions)
    }
}

impl From<Bracket> for Vec<Candidate> {
    fn from(b: Bracket) -> Self {
        b.positions
    }
}

fn check_permutation_of_range(values: &[Candidate]) -> Result<()> {
    let len = values.len() as u32;
    let mut seen = vec![false; values.len()];
    for &v in values {
        if v == 0 {
            return Err(Error::ZeroCandidate);
        }
        if v > len {
            return Err(Error::CandidateOutOfRange { candidate: v, count: len });
        }
        if seen[(v - 1) as usize] {
            return Err(Error::DuplicateCandidate(v));
        }
        seen[(v - 1) as usize] = true;
    }
    // Distinct values within 1..=len and len of them: nothing can be missing.
    Ok(())
}

/// One voter's strict ranking, most preferred first. The ranked candidates
/// need not be `1..=m`; shifted blocks rank translated candidate sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreferenceList {
    ranking: Vec<Candidate>,
}

impl PreferenceList {
    pub fn new(ranking: Vec<Candidate>) -> Result<Self> {
        if ranking.is_empty() {
            return Err(Error::EmptyProfile);
        }
        let mut sorted: Vec<Candidate> = ranking.clone();
        sorted.sort_unstable();
        if sorted[0] == 0 {
            return Err(Error::ZeroCandidate);
        }
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateCandidate(w[0]));
            }
        }
        Ok(PreferenceList { ranking })
    }

    pub fn ranking(&self) -> &[Candidate] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// 0-based rank of `c`, if ranked.
    pub fn position_of(&self, c: Candidate) -> Option<usize> {
        self.ranking.iter().position(|&x| x == c)
    }
}

/// A multiset of strict rankings over a common candidate set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VotingProfile {
    rows: Vec<PreferenceList>,
    candidates: Vec<Candidate>,
}

impl VotingProfile {
    /// All rows must rank the same candidate set; at least one row.
    pub fn new(rows: Vec<PreferenceList>) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyProfile)?;
        let mut candidates: Vec<Candidate> = first.ranking().to_vec();
        candidates.sort_unstable();
        for row in &rows[1..] {
            let mut other: Vec<Candidate> = row.ranking().to_vec();
            other.sort_unstable();
            if other != candidates {
                return Err(Error::MixedCandidateSets);
            }
        }
        Ok(VotingProfile { rows, candidates })
    }

    pub fn rows(&self) -> &[PreferenceList] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// The common candidate set, ascending.
    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn candidate_count(&self) -> u32 {
        self.candidates.len() as u32
    }

    /// Whether the rows rank exactly `1..=m`.
    pub fn is_standard(&self) -> bool {
        self.candidates
            .iter()
            .zip(1..)
            .all(|(&c, expect)| c == expect)
    }

    /// Net number of rows preferring `i` over `j`.
    pub fn margin(&self, i: Candidate, j: Candidate) -> Result<i64> {
        if i == j {
            return Err(Error::SelfPair(i));
        }
        for c in [i, j] {
            if self.candidates.binary_search(&c).is_err() {
                return Err(Error::CandidateNotInProfile(c));
            }
        }
        let mut margin = 0i64;
        for row in &self.rows {
            let pi = row.position_of(i).expect("candidate set was checked");
            let pj = row.position_of(j).expect("candidate set was checked");
            margin += if pi < pj { 1 } else { -1 };
        }
        Ok(margin)
    }

    /// Rank-position lookup tables for standard profiles: `tables[r][c-1]`
    /// is the 0-based rank of candidate `c` in row `r`.
    pub(crate) fn position_tables(&self) -> Result<Vec<Vec<u32>>> {
        if !self.is_standard() {
            return Err(Error::NonStandardCandidates);
        }
        let m = self.candidate_count() as usize;
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut pos = vec![0u32; m];
                for (rank, &c) in row.ranking().iter().enumerate() {
                    pos[(c - 1) as usize] = rank as u32;
                }
                pos
            })
            .collect())
    }

    /// Calls `f` with `(i, j, margin(i, j))` for every canonical pair of a
    /// standard profile, in lexicographic order.
    pub fn for_each_pair_margin(&self, mut f: impl FnMut(Candidate, Candidate, i64)) -> Result<()> {
        let tables = self.position_tables()?;
        let m = self.candidate_count();
        for i in 1..m {
            for j in (i + 1)..=m {
                let mut margin = 0i64;
                for pos in &tables {
                    margin += if pos[(i - 1) as usize] < pos[(j - 1) as usize] {
                        1
                    } else {
                        -1
                    };
                }
                f(i, j, margin);
            }
        }
        Ok(())
    }

    /// The strict pattern induced by pairwise majority. Errors with the
    /// lexicographically first tied pair if any margin is zero.
    pub fn majority_graph(&self) -> Result<PreferencePattern> {
        let m = self.candidate_count();
        if !(m >= 2 && m.is_power_of_two()) {
            return Err(Error::LengthNotPowerOfTwo(m as usize));
        }
        let n_exponent = m.trailing_zeros();
        check_exponent(n_exponent)?;
        let mut bits = BitMatrix::new(pair_count_for(m) as usize);
        let mut tie: Option<(Candidate, Candidate)> = None;
        self.for_each_pair_margin(|i, j, margin| {
            if margin == 0 {
                if tie.is_none() {
                    tie = Some((i, j));
                }
            } else if margin > 0 {
                bits.set(pair_index(i, j), true);
            }
        })?;
        if let Some((i, j)) = tie {
            return Err(Error::TiedPair(i, j));
        }
        Ok(PreferencePattern {
            n_exponent,
            store: Store::Dense(bits),
        })
    }

    /// Rows as comma-separated 1-based indices, one row per line, no header.
    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        for row in &self.rows {
            let line = row
                .ranking()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("profile CSV is ASCII")
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let ranking = line
                .split(',')
                .map(|field| {
                    field.trim().parse::<Candidate>().map_err(|e| {
                        Error::Parse(format!("line {}: bad candidate index {field:?}: {e}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(PreferenceList::new(ranking)?);
        }
        VotingProfile::new(rows)
    }

    /// The distinct candidate values as a set, useful for disjointness checks.
    pub(crate) fn candidate_set(&self) -> BTreeSet<Candidate> {
        self.candidates.iter().copied().collect()
    }
}

/// Poisson-drawn voter multiplicities for the rows of a profile, together
/// with the total intensity they were drawn at.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CommissionSample {
    pub weights: Vec<u64>,
    pub lambda: f64,
}

impl CommissionSample {
    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }
}
