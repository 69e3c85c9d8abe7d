//! Finite electorates: multisets of choice functions with integer
//! multiplicities, their exact tallies, and the strict majority outcome.

use std::collections::BTreeMap;
use std::fmt;


use crate::arith::Scalar;
use crate::choice::{pair_count, pairs, ChoiceFunction, MIN_CANDIDATES};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Net integer votes per unordered pair, stored once for `(i, j)` with
/// `i < j`; reading the reversed pair negates.
#[derive(Clone, PartialEq, Eq)]
pub struct IntTally<I: Scalar> {
    n: usize,
    entries: Vec<I>,
}

impl<I: Scalar> IntTally<I> {
    pub fn zero(n: usize) -> Result<Self> {
        if n < MIN_CANDIDATES {
            return Err(Error::TooFewCandidates(n));
        }
        Ok(IntTally { n, entries: vec![I::zero(); pair_count(n)] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn pair_index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < y && y < self.n);
        x * (2 * self.n - x - 1) / 2 + (y - x - 1)
    }

    pub fn get(&self, x: usize, y: usize) -> I {
        assert!(x < self.n && y < self.n && x != y, "valid candidate pair");
        if x < y {
            self.entries[self.pair_index(x, y)].clone()
        } else {
            -self.entries[self.pair_index(y, x)].clone()
        }
    }

    /// Add `multiplicity` ballots of `c` to the running totals.
    pub fn add_ballots(&mut self, c: &ChoiceFunction, multiplicity: &I) {
        assert_eq!(c.n(), self.n, "ballot candidate count must match tally");
        for (k, (i, j)) in pairs(self.n).enumerate() {
            match c.weight(i, j) {
                1 => self.entries[k] = self.entries[k].clone() + multiplicity.clone(),
                -1 => self.entries[k] = self.entries[k].clone() - multiplicity.clone(),
                _ => {}
            }
        }
    }

    /// Strict simple majority: a pair is decided only by a nonzero net total.
    pub fn majority(&self) -> ChoiceFunction {
        let mut c = ChoiceFunction::new(self.n).expect("n checked at construction");
        for (k, (i, j)) in pairs(self.n).enumerate() {
            if self.entries[k].is_positive() {
                c.set(i, j);
            } else if self.entries[k].is_negative() {
                c.set(j, i);
            }
        }
        c
    }
}

impl<I: Scalar> fmt::Debug for IntTally<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntTally(n={};", self.n)?;
        for (k, (i, j)) in pairs(self.n).enumerate() {
            if !self.entries[k].is_zero() {
                write!(f, " ({},{})={}", i, j, self.entries[k])?;
            }
        }
        write!(f, ")")
    }
}

/// A finite electorate: distinct choice functions with positive integer
/// multiplicities, kept sorted by canonical key.
#[derive(Clone, PartialEq, Eq)]
pub struct VoterProfile<I: Scalar> {
    n: usize,
    voters: BTreeMap<ChoiceFunction, I>,
}

impl<I: Scalar> VoterProfile<I> {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_CANDIDATES {
            return Err(Error::TooFewCandidates(n));
        }
        Ok(VoterProfile { n, voters: BTreeMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Add `multiplicity` voters of `c`; duplicates of an existing function
    /// merge by summing.
    pub fn add(&mut self, c: ChoiceFunction, multiplicity: I) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::CandidateCountMismatch { left: self.n, right: c.n() });
        }
        if !multiplicity.is_positive() {
            return Err(Error::NonpositiveMultiplicity);
        }
        let slot = self.voters.entry(c).or_insert_with(I::zero);
        *slot = slot.clone() + multiplicity;
        Ok(())
    }

    /// Merge another electorate into this one, summing multiplicities.
    pub fn merge(&mut self, other: &VoterProfile<I>) -> Result<()> {
        for (c, m) in other.iter() {
            self.add(c.clone(), m.clone())?;
        }
        Ok(())
    }

    /// Multiply every multiplicity by `k > 0`.
    pub fn scale(&mut self, k: &I) -> Result<()> {
        if !k.is_positive() {
            return Err(Error::NonpositiveMultiplicity);
        }
        for m in self.voters.values_mut() {
            *m = m.clone() * k.clone();
        }
        Ok(())
    }

    /// Relabel every voter's candidates by `s`.
    pub fn permuted(&self, s: &Permutation) -> VoterProfile<I> {
        let mut out = VoterProfile { n: self.n, voters: BTreeMap::new() };
        for (c, m) in &self.voters {
            let slot = out.voters.entry(c.permuted(s)).or_insert_with(I::zero);
            *slot = slot.clone() + m.clone();
        }
        out
    }

    /// Voters in canonical-key order.
    pub fn iter(&self) -> impl Iterator<Item = (&ChoiceFunction, &I)> {
        self.voters.iter()
    }

    pub fn distinct_count(&self) -> usize {
        self.voters.len()
    }

    /// Total number of voters (sum of multiplicities).
    pub fn voter_count(&self) -> I {
        self.voters.values().fold(I::zero(), |acc, m| acc + m.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.voters.is_empty()
    }

    pub fn tally(&self) -> IntTally<I> {
        let mut t = IntTally::zero(self.n).expect("n checked at construction");
        for (c, m) in &self.voters {
            t.add_ballots(c, m);
        }
        t
    }

    /// Strict simple majority outcome of the whole electorate.
    pub fn majority_outcome(&self) -> ChoiceFunction {
        self.tally().majority()
    }
}

impl<I: Scalar> fmt::Debug for VoterProfile<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VoterProfile(n={}; {} distinct)", self.n, self.voters.len())
    }
}
