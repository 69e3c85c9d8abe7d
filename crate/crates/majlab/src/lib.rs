//! Majority voting where voters may abstain on individual candidate pairs.
//!
//! A ballot is a partial choice function on pairs drawn from `n`
//! candidates; a family of such functions closed under candidate
//! relabeling is presented by generators as a [`SymmetricClass`]. The crate
//! classifies these families, decides whether a target outcome arises as
//! the strict pairwise majority of some finite electorate drawn from the
//! family (by a characterization and, independently, by exact rational
//! linear programming), and synthesizes explicit electorates with voter
//! counts checked against closed-form bounds.
//!
//! All arithmetic is exact: integers and rationals, generic over the
//! integer representation via [`arith::Scalar`], with [`Int`]-backed
//! aliases at the crate root.

pub mod arith;
pub mod choice;
pub mod classify;
pub mod cli;
pub mod closure;
pub mod error;
pub mod perm;
pub mod profile;
pub mod ratlin;
pub mod synth;
pub mod weights;

pub use choice::{all_functions, ChoiceFunction, MIN_CANDIDATES};
pub use classify::{Category, SymmetricClass};
pub use closure::{decide_fast, decide_lp, Certificate, MembershipVerdict, Route};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use synth::{synth_any, SynthesisReport};

/// Default integer backing for the crate-root aliases.
pub type Int = num_bigint::BigInt;
/// Exact rational over [`Int`].
pub type Rat = arith::Rational<Int>;
/// Pairwise weight matrix over [`Rat`].
pub type Weights = weights::WeightMatrix<Int>;
/// Finite electorate with [`Int`] multiplicities.
pub type Profile = profile::VoterProfile<Int>;
/// Pairwise vote tally over [`Int`].
pub type Tally = profile::IntTally<Int>;

fn max_n_override() -> Option<usize> {
    use std::sync::OnceLock;
    static CELL: OnceLock<Option<usize>> = OnceLock::new();
    *CELL.get_or_init(|| {
        std::env::var("MAJLAB_MAX_N").ok().and_then(|s| s.trim().parse().ok())
    })
}

/// Largest candidate count for which full relabeling orbits are expanded;
/// factorial growth past this point. Overridden by `MAJLAB_MAX_N`.
pub fn orbit_cap() -> usize {
    max_n_override().unwrap_or(7)
}

/// Largest candidate count for which all `3^(n choose 2)` choice functions
/// are enumerated. Overridden by `MAJLAB_MAX_N`.
pub fn enumeration_cap() -> usize {
    max_n_override().unwrap_or(5)
}
