//! Partial choice functions: for every unordered pair of candidates, either
//! a winner or an abstention.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const MIN_CANDIDATES: usize = 3;

/// Unordered pairs `(i, j)` with `i < j` over `0..n`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// A choice function on pairs with abstention.
///
/// One trit per unordered pair, stored for `(i, j)` with `i < j` in
/// lexicographic pair order: `+1` means `i` beats `j`, `-1` means `j` beats
/// `i`, `0` means abstention. The derived ordering (by `n`, then the trit
/// table) coincides with the ordering of [`canonical_key`] strings.
///
/// [`canonical_key`]: ChoiceFunction::canonical_key
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChoiceFunction {
    n: usize,
    table: Vec<i8>,
}

impl ChoiceFunction {
    /// The all-abstaining function on `n` candidates.
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_CANDIDATES {
            return Err(Error::TooFewCandidates(n));
        }
        Ok(ChoiceFunction { n, table: vec![0; pair_count(n)] })
    }

    /// Build from an explicit trit table in lexicographic pair order.
    pub fn from_table(n: usize, table: Vec<i8>) -> Result<Self> {
        if n < MIN_CANDIDATES {
            return Err(Error::TooFewCandidates(n));
        }
        if table.len() != pair_count(n) {
            return Err(Error::Internal(format!(
                "trit table length {} does not match {} pairs",
                table.len(),
                pair_count(n)
            )));
        }
        if table.iter().any(|&t| !(-1..=1).contains(&t)) {
            return Err(Error::WeightOutOfRange);
        }
        Ok(ChoiceFunction { n, table })
    }

    /// Build from `(winner, loser)` edges. A pair may appear at most once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut c = Self::new(n)?;
        for &(w, l) in edges {
            c.check_pair(w, l)?;
            if c.weight(w, l) != 0 {
                return Err(Error::DuplicatePair { x: w.min(l), y: w.max(l) });
            }
            c.set(w, l);
        }
        Ok(c)
    }

    /// Directed cycle `v0 -> v1 -> ... -> vk -> v0`; nothing else decided.
    pub fn cycle(n: usize, vertices: &[usize]) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateCycle);
        }
        let mut edges: Vec<(usize, usize)> = vertices.windows(2).map(|w| (w[0], w[1])).collect();
        edges.push((*vertices.last().unwrap(), vertices[0]));
        Self::from_edges(n, &edges)
    }

    /// Every member of `winners` beats every non-member; nothing else decided.
    /// `winners` must be a nonempty proper subset of the candidates.
    pub fn two_tier(n: usize, winners: &[usize]) -> Result<Self> {
        let mut is_winner = vec![false; n];
        for &w in winners {
            if w >= n {
                return Err(Error::CandidateOutOfRange { x: w, n });
            }
            if is_winner[w] {
                return Err(Error::EqualCandidates(w));
            }
            is_winner[w] = true;
        }
        if winners.is_empty() || winners.len() >= n {
            return Err(Error::WrongCategory(format!(
                "winning set must be a nonempty proper subset, got {} of {}",
                winners.len(),
                n
            )));
        }
        let mut edges = Vec::new();
        for w in 0..n {
            if is_winner[w] {
                for l in 0..n {
                    if !is_winner[l] {
                        edges.push((w, l));
                    }
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Total strict order: `ranking[0]` beats everyone, and so on down.
    pub fn linear_order(ranking: &[usize]) -> Result<Self> {
        let n = ranking.len();
        Permutation::from_map(ranking.to_vec())?;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((ranking[i], ranking[j]));
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn pair_index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < y && y < self.n);
        x * (2 * self.n - x - 1) / 2 + (y - x - 1)
    }

    pub fn check_pair(&self, x: usize, y: usize) -> Result<()> {
        if x >= self.n {
            return Err(Error::CandidateOutOfRange { x, n: self.n });
        }
        if y >= self.n {
            return Err(Error::CandidateOutOfRange { x: y, n: self.n });
        }
        if x == y {
            return Err(Error::EqualCandidates(x));
        }
        Ok(())
    }

    /// `+1` if `x` beats `y`, `-1` if `y` beats `x`, `0` on abstention.
    ///
    /// Panics on `x == y` or out-of-range candidates; validate untrusted
    /// input at the parsing boundary.
    pub fn weight(&self, x: usize, y: usize) -> i8 {
        self.check_pair(x, y).expect("valid candidate pair");
        if x < y {
            self.table[self.pair_index(x, y)]
        } else {
            -self.table[self.pair_index(y, x)]
        }
    }

    /// The winner of the pair, if decided.
    pub fn decide(&self, x: usize, y: usize) -> Option<usize> {
        match self.weight(x, y) {
            1 => Some(x),
            -1 => Some(y),
            _ => None,
        }
    }

    /// Decide the pair in favor of `winner`.
    pub fn set(&mut self, winner: usize, loser: usize) {
        self.check_pair(winner, loser).expect("valid candidate pair");
        let (i, j, w) = if winner < loser { (winner, loser, 1) } else { (loser, winner, -1) };
        let idx = self.pair_index(i, j);
        self.table[idx] = w;
    }

    /// Make the pair an abstention.
    pub fn clear(&mut self, x: usize, y: usize) {
        self.check_pair(x, y).expect("valid candidate pair");
        let idx = self.pair_index(x.min(y), x.max(y));
        self.table[idx] = 0;
    }

    /// True when every pair is an abstention.
    pub fn is_empty(&self) -> bool {
        self.table.iter().all(|&t| t == 0)
    }

    pub fn decided_pair_count(&self) -> usize {
        self.table.iter().filter(|&&t| t != 0).count()
    }

    /// Decided pairs as `(winner, loser)`, in lexicographic pair order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, j) in pairs(self.n) {
            match self.table[self.pair_index(i, j)] {
                1 => out.push((i, j)),
                -1 => out.push((j, i)),
                _ => {}
            }
        }
        out
    }

    /// Net wins minus losses for `x` across all pairs.
    pub fn valence(&self, x: usize) -> isize {
        (0..self.n).filter(|&y| y != x).map(|y| self.weight(x, y) as isize).sum()
    }

    pub fn valences(&self) -> Vec<isize> {
        (0..self.n).map(|x| self.valence(x)).collect()
    }

    /// Injective string key for a fixed `n`: one character per pair in
    /// lexicographic pair order (`1` win for the smaller index, `-` win for
    /// the larger, `0` abstention). String order equals the derived `Ord`.
    pub fn canonical_key(&self) -> String {
        self.table
            .iter()
            .map(|&t| match t {
                1 => '1',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    /// Relabel candidates: the result decides `{s(x), s(y)}` for `s(x)`
    /// exactly when `self` decides `{x, y}` for `x`.
    pub fn permuted(&self, s: &Permutation) -> ChoiceFunction {
        assert_eq!(s.n(), self.n, "permutation must match candidate count");
        let mut out = ChoiceFunction { n: self.n, table: vec![0; self.table.len()] };
        for (i, j) in pairs(self.n) {
            let w = self.table[self.pair_index(i, j)];
            if w == 0 {
                continue;
            }
            let (a, b) = (s.apply(i), s.apply(j));
            let (p, q, v) = if a < b { (a, b, w) } else { (b, a, -w) };
            let idx = out.pair_index(p, q);
            out.table[idx] = v;
        }
        out
    }

    /// All distinct relabelings, sorted by canonical key. Errors beyond the
    /// configured candidate cap.
    pub fn orbit(&self) -> Result<Vec<ChoiceFunction>> {
        self.orbit_capped(crate::orbit_cap())
    }

    pub fn orbit_capped(&self, cap: usize) -> Result<Vec<ChoiceFunction>> {
        if self.n > cap {
            return Err(Error::CapExceeded(self.n, cap));
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in Permutation::all(self.n) {
            seen.insert(self.permuted(&s));
        }
        Ok(seen.into_iter().collect())
    }
}

/// All `3^(n(n-1)/2)` choice functions on `n` candidates, in canonical-key
/// order. Lazy; the count is exponential, so cap `n` at the call site.
pub fn all_functions(n: usize) -> impl Iterator<Item = ChoiceFunction> {
    let len = pair_count(n);
    let mut table = vec![-1i8; len];
    let mut done = n < MIN_CANDIDATES;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = ChoiceFunction { n, table: table.clone() };
        // Base-3 increment in trit order -1 < 0 < 1, least significant last.
        let mut i = len;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if table[i] < 1 {
                table[i] += 1;
                for t in &mut table[i + 1..] {
                    *t = -1;
                }
                break;
            }
        }
        if len == 0 {
            done = true;
        }
        Some(current)
    })
}

impl fmt::Debug for ChoiceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChoiceFunction(n={};", self.n)?;
        if self.is_empty() {
            write!(f, " empty")?;
        } else {
            for (k, (w, l)) in self.edges().into_iter().enumerate() {
                write!(f, "{} {}>{}", if k == 0 { "" } else { "," }, w, l)?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle3() -> ChoiceFunction {
        ChoiceFunction::cycle(3, &[0, 1, 2]).unwrap()
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(ChoiceFunction::new(2), Err(Error::TooFewCandidates(2)));
        assert!(ChoiceFunction::new(3).is_ok());
    }

    #[test]
    fn weight_is_skew_symmetric() {
        let c = triangle3();
        for (i, j) in pairs(3) {
            assert_eq!(c.weight(i, j), -c.weight(j, i));
        }
    }

    #[test]
    fn decide_matches_weight() {
        let c = triangle3();
        assert_eq!(c.decide(0, 1), Some(0));
        assert_eq!(c.decide(1, 0), Some(0));
        assert_eq!(c.decide(2, 0), Some(2));
        let e = ChoiceFunction::new(3).unwrap();
        assert_eq!(e.decide(0, 1), None);
    }

    #[test]
    fn set_then_clear_roundtrips() {
        let mut c = ChoiceFunction::new(4).unwrap();
        c.set(3, 1);
        assert_eq!(c.weight(3, 1), 1);
        assert_eq!(c.weight(1, 3), -1);
        c.clear(1, 3);
        assert!(c.is_empty());
    }

    #[test]
    fn canonical_key_empty_is_zeros() {
        assert_eq!(ChoiceFunction::new(3).unwrap().canonical_key(), "000");
    }

    #[test]
    fn canonical_key_order_matches_ord() {
        let mut fns: Vec<ChoiceFunction> = all_functions(3).collect();
        assert_eq!(fns.len(), 27);
        let mut by_key = fns.clone();
        by_key.sort_by_key(|c| c.canonical_key());
        fns.sort();
        assert_eq!(fns, by_key);
    }

    #[test]
    fn valences_sum_to_zero() {
        let c = ChoiceFunction::linear_order(&[2, 0, 1, 3]).unwrap();
        assert_eq!(c.valences().iter().sum::<isize>(), 0);
        assert_eq!(c.valence(2), 3);
    }

    #[test]
    fn permuted_is_equivariant() {
        let c = triangle3();
        let s = Permutation::from_map(vec![1, 2, 0]).unwrap();
        let d = c.permuted(&s);
        for (x, y) in pairs(3) {
            assert_eq!(d.weight(s.apply(x), s.apply(y)), c.weight(x, y));
        }
    }

    #[test]
    fn permuted_composes_as_left_action() {
        let c = ChoiceFunction::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        for s in Permutation::all(4).into_iter().take(8) {
            for t in Permutation::all(4).into_iter().take(8) {
                assert_eq!(c.permuted(&s).permuted(&t), c.permuted(&t.compose(&s)));
            }
        }
    }

    #[test]
    fn triangle_orbit_has_both_orientations() {
        let orbit = triangle3().orbit().unwrap();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&ChoiceFunction::cycle(3, &[0, 2, 1]).unwrap()));
    }

    #[test]
    fn two_tier_orbit_on_four() {
        let c = ChoiceFunction::two_tier(4, &[0]).unwrap();
        assert_eq!(c.orbit().unwrap().len(), 4);
    }

    #[test]
    fn from_edges_rejects_duplicates() {
        assert!(ChoiceFunction::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(ChoiceFunction::from_edges(3, &[(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn all_functions_count() {
        assert_eq!(all_functions(3).count(), 27);
        assert_eq!(all_functions(4).count(), 729);
    }
}
