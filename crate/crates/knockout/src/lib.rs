//! Tools for studying how the organizer of a knockout (single-elimination)
//! tournament can pick the bracket, and how a voting profile or a random
//! commission of voters determines the pairwise-comparison structure the
//! bracket is played on.
//!
//! The crate is organized around a recursive family of complete asymmetric
//! pairwise-comparison structures ("preference patterns") over `2^(n+3)`
//! candidates in which *every* candidate can be made champion by a suitable
//! bracket. It provides:
//!
//! * [`pattern`]: construction of the pattern family,
//! * [`tournament`]: playing out brackets and exhaustive winner enumeration,
//! * [`synthesis`]: building a championship bracket for any chosen target,
//! * [`profile`]: compact voting profiles that generate the patterns as
//!   their majority graphs,
//! * [`sampler`]: Poisson-randomized commissions, mismatch estimation, and
//!   large-deviation bounds.

pub mod model;
pub mod pattern;
pub mod profile;
pub mod sampler;
pub mod synthesis;
pub mod tournament;

pub use model::{
    pattern_diff, Bracket, Candidate, CommissionSample, Error, PreferenceList, PreferencePattern,
    Result, Side, VotingProfile,
};
