//! The four-way taxonomy of symmetric families and the per-function
//! predicates (balance, tiers, pseudo-balance, valence geometry) behind it.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::arith::{rat_int, Rational, Scalar};
use crate::choice::{pairs, ChoiceFunction, MIN_CANDIDATES};
use crate::error::{Error, Result};
use crate::ratlin::convex_zero_search;

/// True when every candidate's valence (net wins minus losses) is zero.
pub fn is_balanced(c: &ChoiceFunction) -> bool {
    (0..c.n()).all(|x| c.valence(x) == 0)
}

/// Tier decomposition, if one exists: an ordered partition of the candidates
/// such that pairs inside a tier are abstentions and across tiers the higher
/// tier always wins. Returned lowest tier first; each tier sorted ascending.
///
/// Tiers are recovered as the connected components of the undecided-pair
/// graph, then verified.
pub fn tiers(c: &ChoiceFunction) -> Option<Vec<Vec<usize>>> {
    let n = c.n();
    // Components of the graph whose edges are the undecided pairs.
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(comp: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        let mut cur = x;
        while comp[cur] != r {
            let next = comp[cur];
            comp[cur] = r;
            cur = next;
        }
        r
    }
    for (i, j) in pairs(n) {
        if c.weight(i, j) == 0 {
            let (a, b) = (root(&mut comp, i), root(&mut comp, j));
            comp[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for x in 0..n {
        let r = root(&mut comp, x);
        if index_of[r] == usize::MAX {
            index_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of[r]].push(x);
    }
    // Inside a component every pair must be an abstention.
    for g in &groups {
        for (a, b) in pairs(g.len()) {
            if c.weight(g[a], g[b]) != 0 {
                return None;
            }
        }
    }
    // Across components every pair must be decided, consistently per pair of
    // components; the resulting tournament on components must be transitive.
    let k = groups.len();
    let mut wins = vec![0usize; k];
    for p in 0..k {
        for q in p + 1..k {
            let mut dir: Option<bool> = None; // true: p beats q
            for &u in &groups[p] {
                for &v in &groups[q] {
                    let here = match c.weight(u, v) {
                        1 => true,
                        -1 => false,
                        _ => return None,
                    };
                    if *dir.get_or_insert(here) != here {
                        return None;
                    }
                }
            }
            if dir == Some(true) {
                wins[p] += 1;
            } else {
                wins[q] += 1;
            }
        }
    }
    // Transitive tournament: win counts are exactly 0, 1, ..., k-1.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&g| wins[g]);
    for (rank, &g) in order.iter().enumerate() {
        if wins[g] != rank {
            return None;
        }
    }
    Some(order.into_iter().map(|g| groups[g].clone()).collect())
}

/// The winning set of an exactly-two-tier function, if it is one: everyone
/// in the set beats everyone outside, and nothing else is decided.
pub fn winning_set(c: &ChoiceFunction) -> Option<Vec<usize>> {
    let t = tiers(c)?;
    if t.len() == 2 {
        Some(t[1].clone())
    } else {
        None
    }
}

pub fn is_partisan(c: &ChoiceFunction) -> bool {
    winning_set(c).is_some()
}

/// True when every decided pair lies on a directed cycle of decided pairs.
pub fn is_pseudo_balanced(c: &ChoiceFunction) -> bool {
    let n = c.n();
    let mut reach = vec![vec![false; n]; n];
    for (i, j) in pairs(n) {
        match c.weight(i, j) {
            1 => reach[i][j] = true,
            -1 => reach[j][i] = true,
            _ => {}
        }
    }
    let edges: Vec<(usize, usize)> = c.edges();
    for k in 0..n {
        for a in 0..n {
            if reach[a][k] {
                for b in 0..n {
                    if reach[k][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    edges.into_iter().all(|(u, v)| reach[v][u])
}

/// Imbalanced and not two-tiered.
pub fn is_chaotic(c: &ChoiceFunction) -> bool {
    !is_balanced(c) && !is_partisan(c)
}

/// A point of the tagged valence diagram, with one ordered pair witnessing it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ValencePoint {
    /// `(valence(u) - tag, valence(w) + tag)` for a witness pair `(u, w)`.
    pub point: (isize, isize),
    pub tag: i8,
    /// Ordered pair `(u, w)` with `weight(u, w) == tag` producing `point`.
    pub witness: (usize, usize),
}

/// All valence points with the given tag, deduplicated by point (first
/// witness in order of ascending `u`, then `w`), sorted by point.
///
/// For tag 0 both orientations of an undecided pair contribute, so the tag-0
/// set is mirror-symmetric by construction.
pub fn valence_pairs(c: &ChoiceFunction, tag: i8) -> Vec<ValencePoint> {
    assert!((-1..=1).contains(&tag), "tag is a trit");
    let val = c.valences();
    let mut seen = BTreeSet::new();
    let mut out: Vec<ValencePoint> = Vec::new();
    for u in 0..c.n() {
        for w in 0..c.n() {
            if u == w || c.weight(u, w) != tag {
                continue;
            }
            let point = (val[u] - tag as isize, val[w] + tag as isize);
            if seen.insert(point) {
                out.push(ValencePoint { point, tag, witness: (u, w) });
            }
        }
    }
    out.sort_by_key(|p| p.point);
    out
}

/// A rational convex combination of tagged valence points that hits the
/// origin while weighting the `+1` and `-1` tags unequally.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValenceDecomposition<I: Scalar> {
    /// Points with strictly positive coefficients; coefficients sum to 1 and
    /// the weighted point sum is `(0, 0)`.
    pub terms: Vec<(ValencePoint, Rational<I>)>,
    /// Total `+1`-tag coefficient minus total `-1`-tag coefficient; nonzero.
    pub imbalance: Rational<I>,
}

/// Search for a witness that the function's valence diagram is imbalanced.
///
/// The feasible set is a polytope cut out by three equalities (coefficients
/// sum to 1, the weighted point sum vanishes coordinatewise), so the tag
/// functional is extremal at basic solutions of support at most 3; those are
/// enumerated exactly and the first witness with nonzero imbalance wins.
pub fn valence_imbalance_witness<I: Scalar>(
    c: &ChoiceFunction,
) -> Option<ValenceDecomposition<I>> {
    let mut points: Vec<ValencePoint> = Vec::new();
    for tag in [-1i8, 0, 1] {
        points.extend(valence_pairs(c, tag));
    }
    let tagged: Vec<((isize, isize), i8)> = points.iter().map(|p| (p.point, p.tag)).collect();
    let support = convex_zero_search(&tagged, |tag: i8| rat_int::<I>(tag as i32))?;
    let mut imbalance = Rational::zero();
    let mut terms = Vec::new();
    for (idx, coeff) in support {
        imbalance = imbalance + rat_int::<I>(points[idx].tag as i32) * coeff.clone();
        terms.push((points[idx], coeff));
    }
    debug_assert!(!imbalance.is_zero());
    Some(ValenceDecomposition { terms, imbalance })
}

/// The taxonomy of a symmetric family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Category {
    /// No decisive generators at all.
    Trivial,
    /// Every generator has all valences zero.
    Balanced,
    /// Every generator is two-tiered.
    Partisan,
    /// Two-tiered and balanced generators together, nothing chaotic.
    Mixed,
    /// Some generator is imbalanced and not two-tiered.
    Chaotic,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Category::Trivial => "trivial",
            Category::Balanced => "balanced",
            Category::Partisan => "partisan",
            Category::Mixed => "mixed",
            Category::Chaotic => "chaotic",
        };
        f.write_str(s)
    }
}

/// Classification result with a human-readable explanation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassCategory {
    pub category: Category,
    pub reason: String,
    /// True when dropping all-abstaining generators moved the family to a
    /// different category than the raw generator list would get.
    pub stripping_changed: bool,
}

/// A symmetric family of choice functions, presented by generators; the
/// family is the union of their orbits under candidate relabeling.
///
/// All-abstaining generators are stripped at construction (recorded in
/// `stripped_empty`); when one was present the family still contains it, and
/// membership queries account for that.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricClass {
    n: usize,
    generators: Vec<ChoiceFunction>,
    stripped_empty: bool,
}

impl SymmetricClass {
    pub fn new(n: usize, generators: Vec<ChoiceFunction>) -> Result<Self> {
        if n < MIN_CANDIDATES {
            return Err(Error::TooFewCandidates(n));
        }
        let mut stripped_empty = false;
        let mut kept = BTreeSet::new();
        for g in generators {
            if g.n() != n {
                return Err(Error::CandidateCountMismatch { left: n, right: g.n() });
            }
            if g.is_empty() {
                stripped_empty = true;
            } else {
                kept.insert(g);
            }
        }
        Ok(SymmetricClass { n, generators: kept.into_iter().collect(), stripped_empty })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Decisive generators, deduplicated and sorted by canonical key.
    pub fn generators(&self) -> &[ChoiceFunction] {
        &self.generators
    }

    pub fn stripped_empty(&self) -> bool {
        self.stripped_empty
    }

    /// True when the family has no members at all (not even the
    /// all-abstaining function).
    pub fn is_void(&self) -> bool {
        self.generators.is_empty() && !self.stripped_empty
    }

    /// Every member of the family: the union of generator orbits, plus the
    /// all-abstaining function when one was given. Sorted by canonical key.
    pub fn members(&self) -> Result<Vec<ChoiceFunction>> {
        let mut out = BTreeSet::new();
        if self.stripped_empty {
            out.insert(ChoiceFunction::new(self.n)?);
        }
        for g in &self.generators {
            out.extend(g.orbit()?);
        }
        Ok(out.into_iter().collect())
    }

    /// Classify by the decisive generators; reports whether stripping
    /// all-abstaining generators changed the verdict.
    pub fn classify(&self) -> ClassCategory {
        let stripped = category_of(&self.generators, self.generators.is_empty());
        // The raw list reads differently only when an all-abstaining
        // generator was dropped: that generator is balanced but not
        // partisan, so it breaks an all-partisan verdict, while an all-empty
        // list still decides nothing at all.
        let literal = if self.stripped_empty && !self.generators.is_empty() {
            match stripped {
                Category::Partisan => Category::Mixed,
                other => other,
            }
        } else if self.stripped_empty {
            Category::Trivial
        } else {
            stripped
        };
        let stripping_changed = literal != stripped;
        let mut reason = match stripped {
            Category::Trivial => "no generator decides any pair".to_string(),
            Category::Balanced => format!(
                "all {} generator(s) have every valence zero",
                self.generators.len()
            ),
            Category::Partisan => format!(
                "all {} generator(s) are two-tiered",
                self.generators.len()
            ),
            Category::Mixed => {
                "imbalanced generators are all two-tiered, and balanced generators are present"
                    .to_string()
            }
            Category::Chaotic => {
                let g = self
                    .generators
                    .iter()
                    .find(|g| is_chaotic(g))
                    .expect("chaotic verdict implies a chaotic generator");
                format!("generator {:?} is imbalanced and not two-tiered", g)
            }
        };
        if self.stripped_empty {
            reason.push_str("; an all-abstaining generator was stripped");
            if stripping_changed {
                reason.push_str(&format!(
                    " (the raw generator list would read as {})",
                    literal
                ));
            }
        }
        ClassCategory { category: stripped, reason, stripping_changed }
    }
}

/// Five-way verdict on a generator list. `force_trivial` marks the
/// no-generators-at-all case.
fn category_of(generators: &[ChoiceFunction], force_trivial: bool) -> Category {
    if force_trivial || generators.is_empty() {
        return Category::Trivial;
    }
    let all_balanced = generators.iter().all(is_balanced);
    if all_balanced {
        return Category::Balanced;
    }
    if generators.iter().all(is_partisan) {
        return Category::Partisan;
    }
    if generators.iter().any(is_chaotic) {
        return Category::Chaotic;
    }
    Category::Mixed
}
