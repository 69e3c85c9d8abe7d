//! Permutations of the candidate set.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as the image vector: `map[x]` is where
/// `x` goes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    /// Swap of `a` and `b`; the identity when `a == b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut p = Self::identity(n);
        p.check_range(a)?;
        p.check_range(b)?;
        p.map.swap(a, b);
        Ok(p)
    }

    /// Cyclic rotation `v0 -> v1 -> ... -> vk -> v0`, fixing everything else.
    pub fn rotation(n: usize, vertices: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        let mut seen = vec![false; n];
        for &v in vertices {
            p.check_range(v)?;
            if seen[v] {
                return Err(Error::EqualCandidates(v));
            }
            seen[v] = true;
        }
        for w in vertices.windows(2) {
            p.map[w[0]] = w[1];
        }
        if let (Some(&first), Some(&last)) = (vertices.first(), vertices.last()) {
            p.map[last] = first;
        }
        Ok(p)
    }

    fn check_range(&self, x: usize) -> Result<()> {
        if x >= self.map.len() {
            return Err(Error::CandidateOutOfRange { x, n: self.map.len() });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Function composition: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composed permutations must share n");
        Permutation { map: other.map.iter().map(|&x| self.map[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Permutation { map }
    }

    /// All `n!` permutations, in lexicographic order of the image vector.
    pub fn all(n: usize) -> Vec<Permutation> {
        Self::fixing(n, &[])
    }

    /// All permutations fixing every element of `fixed` pointwise, in
    /// lexicographic order of the image vector.
    pub fn fixing(n: usize, fixed: &[usize]) -> Vec<Permutation> {
        let mut is_fixed = vec![false; n];
        for &x in fixed {
            is_fixed[x] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&x| !is_fixed[x]).collect();
        let mut out = Vec::new();
        let mut arrangement = free.clone();
        loop {
            let mut map: Vec<usize> = (0..n).collect();
            for (slot, &value) in free.iter().zip(&arrangement) {
                map[*slot] = value;
            }
            out.push(Permutation { map });
            if !next_lex(&mut arrangement) {
                break;
            }
        }
        out
    }
}

/// Advance to the next lexicographically larger arrangement; false at the last.
fn next_lex(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.map)
    }
}
