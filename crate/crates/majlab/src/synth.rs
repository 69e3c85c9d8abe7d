//! Synthesis of explicit electorates: given a symmetric family and a target
//! outcome in its majority closure, build voters whose strict pairwise
//! majority is exactly the target, and check the electorate size against a
//! closed-form bound for the family's category.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Signed;

use crate::arith::{binomial, factorial, int, Rational, Scalar};
use crate::choice::ChoiceFunction;
use crate::classify::{
    is_balanced, is_chaotic, is_partisan, is_pseudo_balanced, tiers, valence_imbalance_witness,
    winning_set, Category, SymmetricClass, ValenceDecomposition,
};
use crate::closure::weights_to_profile;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::profile::VoterProfile;

/// Breadth-first distances over the decided edges, `dist[s][t]` in steps.
fn edge_distances(c: &ChoiceFunction) -> Vec<Vec<Option<usize>>> {
    let n = c.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && c.decide(u, v) == Some(u)).collect())
        .collect();
    let mut dist = vec![vec![None; n]; n];
    for s in 0..n {
        dist[s][s] = Some(0);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[s][u].unwrap();
            for &v in &adj[u] {
                if dist[s][v].is_none() {
                    dist[s][v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

/// Shortest directed cycle among the decided edges, lexicographically
/// smallest among the shortest: the walk starts at the smallest possible
/// vertex and greedily takes the smallest next vertex that still closes the
/// cycle on time. A minimum-length closed walk never repeats a vertex.
pub fn smallest_cycle(c: &ChoiceFunction) -> Result<Vec<usize>> {
    let n = c.n();
    let dist = edge_distances(c);
    let mut best: Option<usize> = None;
    for u in 0..n {
        for v in 0..n {
            if v != u && c.decide(u, v) == Some(u) {
                if let Some(back) = dist[v][u] {
                    let len = 1 + back;
                    if best.map_or(true, |b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    let len = best.ok_or(Error::NoDirectedCycle)?;
    let start = (0..n)
        .find(|&s| {
            (0..n).any(|t| t != s && c.decide(s, t) == Some(s) && dist[t][s] == Some(len - 1))
        })
        .ok_or(Error::NoDirectedCycle)?;
    let mut cycle = vec![start];
    let mut current = start;
    // The vertex i steps into the walk still needs len - i edges to close.
    for remaining in (1..len).rev() {
        let next = (0..n)
            .find(|&v| {
                v != current
                    && c.decide(current, v) == Some(current)
                    && dist[v][start] == Some(remaining)
            })
            .ok_or_else(|| Error::Internal("cycle walk lost its way home".into()))?;
        cycle.push(next);
        current = next;
    }
    Ok(cycle)
}

/// Shortest directed cycle through the decided edge `x -> y`, as the vertex
/// list `[x, y, ...]`; the return path is the lexicographically smallest
/// among the shortest.
pub fn cycle_through_edge(d: &ChoiceFunction, x: usize, y: usize) -> Result<Vec<usize>> {
    d.check_pair(x, y)?;
    if d.decide(x, y) != Some(x) {
        return Err(Error::UndecidedPair { x, y });
    }
    let dist = edge_distances(d);
    let back = dist[y][x].ok_or(Error::NoDirectedCycle)?;
    let mut cycle = vec![x, y];
    let mut current = y;
    let mut remaining = back;
    while remaining > 1 {
        let next = (0..d.n())
            .find(|&v| {
                v != current
                    && d.decide(current, v) == Some(current)
                    && dist[v][x] == Some(remaining - 1)
            })
            .ok_or_else(|| Error::Internal("cycle walk lost its way home".into()))?;
        cycle.push(next);
        current = next;
        remaining -= 1;
    }
    Ok(cycle)
}

/// Electorate over a balanced family realizing the triangle
/// `x -> y -> z -> x`: relabel a generator's shortest cycle so its first
/// three vertices land on the triangle, add the two rotations of the
/// result, and average over every relabeling of the remaining candidates.
/// The margins are equal on the three triangle pairs and zero elsewhere.
pub fn synth_triangle<I: Scalar>(
    class: &SymmetricClass,
    x: usize,
    y: usize,
    z: usize,
) -> Result<VoterProfile<I>> {
    let n = class.n();
    let rho = Permutation::rotation(n, &[x, y, z])?;
    if class.generators().is_empty() {
        return Err(Error::EmptyClass);
    }
    let mut best: Option<(usize, &ChoiceFunction, Vec<usize>)> = None;
    for g in class.generators() {
        if let Ok(cycle) = smallest_cycle(g) {
            if best.as_ref().map_or(true, |(len, _, _)| cycle.len() < *len) {
                best = Some((cycle.len(), g, cycle));
            }
        }
    }
    let (_, generator, cycle) = best.ok_or(Error::NoDirectedCycle)?;
    let mut map = vec![usize::MAX; n];
    for (from, to) in cycle.iter().take(3).zip([x, y, z]) {
        map[*from] = to;
    }
    let free_from: Vec<usize> = (0..n).filter(|v| !cycle[..3].contains(v)).collect();
    let free_to: Vec<usize> = (0..n).filter(|v| ![x, y, z].contains(v)).collect();
    for (from, to) in free_from.iter().zip(free_to) {
        map[*from] = to;
    }
    let sigma = Permutation::from_map(map)?;
    let c1 = generator.permuted(&sigma);
    let c2 = c1.permuted(&rho);
    let c3 = c2.permuted(&rho);
    let mut profile = VoterProfile::new(n)?;
    for ci in [c1, c2, c3] {
        for tau in Permutation::fixing(n, &[x, y, z]) {
            profile.add(ci.permuted(&tau), I::one())?;
        }
    }
    Ok(profile)
}

/// Electorate over a balanced family realizing the directed cycle through
/// the given vertices with a uniform margin: peel the last vertex off with
/// a triangle whose shared-pair margin cancels the shorter cycle's closing
/// edge, scaling both sides to the common margin.
pub fn synth_cycle<I: Scalar>(
    class: &SymmetricClass,
    vertices: &[usize],
) -> Result<VoterProfile<I>> {
    let n = class.n();
    if vertices.len() < 3 {
        return Err(Error::DegenerateCycle);
    }
    Permutation::rotation(n, vertices)?;
    let k = vertices.len();
    if k == 3 {
        return synth_triangle(class, vertices[0], vertices[1], vertices[2]);
    }
    let mut shorter: VoterProfile<I> = synth_cycle(class, &vertices[..k - 1])?;
    let mut patch: VoterProfile<I> = synth_triangle(class, vertices[0], vertices[k - 2], vertices[k - 1])?;
    let closing = shorter.tally().get(vertices[k - 2], vertices[0]);
    let opposing = patch.tally().get(vertices[0], vertices[k - 2]);
    if !closing.is_positive() || !opposing.is_positive() {
        return Err(Error::Internal("cycle gadgets carry no margin to cancel".into()));
    }
    let common = closing.lcm(&opposing);
    let scale_shorter = common.clone() / closing;
    let scale_patch = common / opposing;
    if !scale_shorter.is_one() {
        shorter.scale(&scale_shorter)?;
    }
    if !scale_patch.is_one() {
        patch.scale(&scale_patch)?;
    }
    shorter.merge(&patch)?;
    Ok(shorter)
}

/// Electorate over a balanced family realizing any target whose every
/// decided edge lies on a directed cycle: one cycle gadget per decided
/// edge, each routed through that edge.
pub fn synth_pseudo_balanced<I: Scalar>(
    class: &SymmetricClass,
    d: &ChoiceFunction,
) -> Result<VoterProfile<I>> {
    if class.n() != d.n() {
        return Err(Error::CandidateCountMismatch { left: class.n(), right: d.n() });
    }
    if !is_pseudo_balanced(d) {
        return Err(Error::NotInClosure(
            "some decided pair of the target lies on no directed cycle".into(),
        ));
    }
    let mut profile = VoterProfile::new(class.n())?;
    for (w, l) in d.edges() {
        let cycle = cycle_through_edge(d, w, l)?;
        profile.merge(&synth_cycle(class, &cycle)?)?;
    }
    Ok(profile)
}

/// Electorate over a partisan family realizing a tiered target: each
/// candidate contributes ballots that rank it among the winners, averaged
/// over relabelings fixing that candidate, with as many copies as its tier
/// index counted from the bottom. Margins grow with tier separation.
pub fn synth_tiered<I: Scalar>(
    class: &SymmetricClass,
    d: &ChoiceFunction,
) -> Result<VoterProfile<I>> {
    let n = class.n();
    if n != d.n() {
        return Err(Error::CandidateCountMismatch { left: n, right: d.n() });
    }
    let target_tiers = tiers(d).ok_or_else(|| {
        Error::NotInClosure("the target is not an ordered partition of the candidates".into())
    })?;
    let generator = class.generators().first().ok_or(Error::EmptyClass)?;
    let winners = winning_set(generator)
        .ok_or_else(|| Error::WrongCategory("a two-tier generator is required".into()))?;
    let anchor = winners[0];
    let mut profile = VoterProfile::new(n)?;
    for (idx, tier) in target_tiers.iter().enumerate() {
        let copies = int::<I>(idx as i32 + 1);
        for &x in tier {
            let cx = if winners.contains(&x) {
                generator.clone()
            } else {
                generator.permuted(&Permutation::transposition(n, x, anchor)?)
            };
            for tau in Permutation::fixing(n, &[x]) {
                profile.add(cx.permuted(&tau), copies.clone())?;
            }
        }
    }
    Ok(profile)
}

/// Electorate over a mixed family realizing one decided edge `b -> a`:
/// balanced triangles `a -> z -> b -> a` for every third vertex `z`, whose
/// off-edge margins are cancelled by batches of two-tier ballots drawn from
/// the partisan generator's orbit. Counts are chosen so everything off the
/// target pair cancels exactly; `reduce` divides out the common factor of
/// the two batch multiplicities.
fn mixed_edge<I: Scalar>(
    balanced: &SymmetricClass,
    tier_size: usize,
    b: usize,
    a: usize,
    reduce: bool,
) -> Result<VoterProfile<I>> {
    let n = balanced.n();
    let l = tier_size;
    let mut triangles = VoterProfile::new(n)?;
    let mut margin: Option<I> = None;
    for z in 0..n {
        if z == a || z == b {
            continue;
        }
        let t: VoterProfile<I> = synth_triangle(balanced, a, z, b)?;
        let tally = t.tally();
        let m = tally.get(a, z);
        if !m.is_positive() || tally.get(z, b) != m || tally.get(b, a) != m {
            return Err(Error::Internal("triangle margins are not uniform".into()));
        }
        match &margin {
            None => margin = Some(m),
            Some(prev) if *prev != m => {
                return Err(Error::Internal("triangle margins differ across apexes".into()))
            }
            Some(_) => {}
        }
        triangles.merge(&t)?;
    }
    let m = margin.ok_or_else(|| Error::Internal("no third vertex exists".into()))?;
    let (k0, k1, k2) = if 2 * l <= n { (n - 2 * l, 0, n - 2) } else { (0, 2 * l - n, n - 2) };
    let k: I = int::<I>(k0 as i32) * binomial(n - 2, l as isize - 1)
        + int::<I>(k2 as i32) * binomial(n - 3, l as isize - 2);
    if !k.is_positive() {
        return Err(Error::Internal("triangle copy count must be positive".into()));
    }
    let g = if reduce { m.gcd(&k) } else { I::one() };
    let k_red = k / g.clone();
    let m_red = m / g;

    triangles.scale(&k_red)?;
    let mut profile = triangles;
    let pool_no_a: Vec<usize> = (0..n).filter(|&v| v != a).collect();
    let pool_no_b: Vec<usize> = (0..n).filter(|&v| v != b).collect();
    let pool_no_ab: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
    let mut add_batch = |pool: &[usize], pick: usize, with_b: bool, count: usize| -> Result<()> {
        let mult = m_red.clone() * int::<I>(count as i32);
        if !mult.is_positive() || pick > pool.len() {
            return Ok(());
        }
        for chosen in pool.iter().copied().combinations(pick) {
            let mut winners = chosen;
            if with_b {
                winners.push(b);
                winners.sort_unstable();
            }
            profile.add(ChoiceFunction::two_tier(n, &winners)?, mult.clone())?;
        }
        Ok(())
    };
    add_batch(&pool_no_a, l, false, k0)?;
    if l >= 1 {
        add_batch(&pool_no_b, l - 1, true, k1)?;
        add_batch(&pool_no_ab, l - 1, true, k2)?;
    }
    let expected = ChoiceFunction::from_edges(n, &[(b, a)])?;
    if profile.majority_outcome() != expected {
        return Err(Error::Internal("edge gadget misses its target".into()));
    }
    Ok(profile)
}

/// Electorate over a mixed family realizing any target: one edge gadget per
/// decided pair. `reduce` trims each gadget by the common factor of its
/// batch multiplicities.
pub fn synth_mixed<I: Scalar>(
    class: &SymmetricClass,
    d: &ChoiceFunction,
    reduce: bool,
) -> Result<VoterProfile<I>> {
    let n = class.n();
    if n != d.n() {
        return Err(Error::CandidateCountMismatch { left: n, right: d.n() });
    }
    let balanced_gens: Vec<ChoiceFunction> =
        class.generators().iter().filter(|g| is_balanced(g)).cloned().collect();
    if balanced_gens.is_empty() {
        return Err(Error::WrongCategory("a balanced generator is required".into()));
    }
    let partisan = class
        .generators()
        .iter()
        .find(|g| is_partisan(g))
        .ok_or_else(|| Error::WrongCategory("a two-tier generator is required".into()))?;
    let tier_size = winning_set(partisan)
        .ok_or_else(|| Error::Internal("a two-tier function has a winning set".into()))?
        .len();
    let balanced = SymmetricClass::new(n, balanced_gens)?;
    let mut profile = VoterProfile::new(n)?;
    for (w, l) in d.edges() {
        profile.merge(&mixed_edge(&balanced, tier_size, w, l, reduce)?)?;
    }
    Ok(profile)
}

/// Electorate over a chaotic family realizing the single edge `x -> y`: the
/// imbalance witness of a chaotic generator yields convex weights on
/// relabeled copies sending each witness pair onto `(x, y)`; averaging over
/// relabelings fixing `x` and `y` zeroes every other pair, leaving the
/// witness's imbalance as the margin. A negative imbalance is flipped by
/// swapping the two candidates.
pub fn synth_single_edge<I: Scalar>(
    class: &SymmetricClass,
    x: usize,
    y: usize,
) -> Result<VoterProfile<I>> {
    let n = class.n();
    if x == y {
        return Err(Error::EqualCandidates(x));
    }
    let swap = Permutation::transposition(n, x, y)?;
    let generator = class
        .generators()
        .iter()
        .find(|g| is_chaotic(g))
        .ok_or_else(|| Error::WrongCategory("a chaotic generator is required".into()))?;
    let witness: ValenceDecomposition<I> = valence_imbalance_witness(generator)
        .ok_or_else(|| Error::Internal("a chaotic generator carries an imbalance witness".into()))?;
    let share = Rational::from_integer(factorial::<I>(n - 2));
    let relabelings = Permutation::fixing(n, &[x, y]);
    let mut acc: BTreeMap<ChoiceFunction, Rational<I>> = BTreeMap::new();
    for (vp, q) in &witness.terms {
        let (u, w) = vp.witness;
        let sigma = if u == y && w == x {
            Permutation::transposition(n, x, y)?
        } else if u == y {
            Permutation::rotation(n, &[x, w, y])?
        } else {
            Permutation::transposition(n, u, x)?.compose(&Permutation::transposition(n, w, y)?)
        };
        let moved = generator.permuted(&sigma);
        let weight = q.clone() / share.clone();
        for tau in &relabelings {
            let voter = moved.permuted(tau);
            acc.entry(voter)
                .and_modify(|t| *t = t.clone() + weight.clone())
                .or_insert_with(|| weight.clone());
        }
    }
    let weights: Vec<(ChoiceFunction, Rational<I>)> = acc.into_iter().collect();
    let mut profile = weights_to_profile(&weights)?;
    if witness.imbalance.is_negative() {
        profile = profile.permuted(&swap);
    }
    let expected = ChoiceFunction::from_edges(n, &[(x, y)])?;
    if profile.majority_outcome() != expected {
        return Err(Error::Internal("single-edge gadget misses its target".into()));
    }
    Ok(profile)
}

/// Electorate over a chaotic family realizing any target: one single-edge
/// gadget per decided pair.
pub fn synth_chaotic<I: Scalar>(
    class: &SymmetricClass,
    d: &ChoiceFunction,
) -> Result<VoterProfile<I>> {
    let n = class.n();
    if n != d.n() {
        return Err(Error::CandidateCountMismatch { left: n, right: d.n() });
    }
    let mut profile = VoterProfile::new(n)?;
    for (w, l) in d.edges() {
        profile.merge(&synth_single_edge(class, w, l)?)?;
    }
    Ok(profile)
}

/// Closed-form electorate-size bound per family category.
pub fn voter_bound<I: Scalar>(category: Category, n: usize) -> I {
    let fact = factorial::<I>(n);
    let nn = int::<I>(n as i32);
    match category {
        Category::Trivial => I::zero(),
        Category::Balanced => int::<I>(3) * fact / int::<I>(2),
        Category::Partisan => nn * fact,
        Category::Mixed => int::<I>(5) * nn * fact / int::<I>(2),
        Category::Chaotic => int::<I>(16) * nn.clone() * nn.clone() * nn * fact,
    }
}

/// A synthesized electorate together with its size audit.
#[derive(Clone, Debug)]
pub struct SynthesisReport<I: Scalar> {
    pub profile: VoterProfile<I>,
    pub case: Category,
    pub total_voters: I,
    pub bound: I,
    pub within_bound: bool,
}

/// Dispatch synthesis on the family's category, verify the electorate's
/// majority outcome equals the target, and audit the voter count against
/// the category bound.
pub fn synth_any<I: Scalar>(
    class: &SymmetricClass,
    d: &ChoiceFunction,
) -> Result<SynthesisReport<I>> {
    let n = class.n();
    if n != d.n() {
        return Err(Error::CandidateCountMismatch { left: n, right: d.n() });
    }
    let category = class.classify().category;
    let profile = match category {
        Category::Trivial => {
            if class.is_void() {
                return Err(Error::NotInClosure("an empty family admits no electorate".into()));
            }
            if !d.is_empty() {
                return Err(Error::NotInClosure(
                    "every electorate from this family decides no pair".into(),
                ));
            }
            VoterProfile::new(n)?
        }
        Category::Balanced => synth_pseudo_balanced(class, d)?,
        Category::Partisan => synth_tiered(class, d)?,
        Category::Mixed => synth_mixed(class, d, true)?,
        Category::Chaotic => synth_chaotic(class, d)?,
    };
    if profile.majority_outcome() != *d {
        return Err(Error::Internal("synthesized electorate misses the target".into()));
    }
    let total_voters = profile.voter_count();
    let bound = voter_bound::<I>(category, n);
    let within_bound = total_voters <= bound;
    Ok(SynthesisReport { profile, case: category, total_voters, bound, within_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn tri() -> ChoiceFunction {
        ChoiceFunction::cycle(3, &[0, 1, 2]).unwrap()
    }

    fn four_cycle() -> ChoiceFunction {
        ChoiceFunction::cycle(4, &[0, 1, 2, 3]).unwrap()
    }

    fn class_of(n: usize, gens: Vec<ChoiceFunction>) -> SymmetricClass {
        SymmetricClass::new(n, gens).unwrap()
    }

    #[test]
    fn smallest_cycle_finds_triangle() {
        assert_eq!(smallest_cycle(&tri()).unwrap(), vec![0, 1, 2]);
        assert_eq!(smallest_cycle(&four_cycle()).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn smallest_cycle_prefers_shorter_and_lex_smallest() {
        // A 4-cycle on {0..3} plus chords making two triangles through 1.
        let c = ChoiceFunction::from_edges(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 3), (3, 1)],
        )
        .unwrap();
        // Both 1 -> 2 -> 3 -> 1 and 1 -> 4 -> 3 -> 1 have length 3; the
        // greedy walk picks the smaller second vertex.
        assert_eq!(smallest_cycle(&c).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn smallest_cycle_rejects_acyclic() {
        let order = ChoiceFunction::linear_order(&[0, 1, 2]).unwrap();
        assert!(matches!(smallest_cycle(&order), Err(Error::NoDirectedCycle)));
    }

    #[test]
    fn cycle_through_edge_matches_known_walks() {
        assert_eq!(cycle_through_edge(&tri(), 0, 1).unwrap(), vec![0, 1, 2]);
        assert_eq!(cycle_through_edge(&four_cycle(), 2, 3).unwrap(), vec![2, 3, 0, 1]);
        let edge = ChoiceFunction::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            cycle_through_edge(&edge, 1, 0),
            Err(Error::UndecidedPair { .. })
        ));
        assert!(matches!(cycle_through_edge(&edge, 0, 1), Err(Error::NoDirectedCycle)));
    }

    #[test]
    fn triangle_gadget_from_triangle_generator() {
        let class = class_of(3, vec![tri()]);
        let p = synth_triangle::<Int>(&class, 0, 1, 2).unwrap();
        assert_eq!(p.majority_outcome(), tri());
        assert_eq!(p.voter_count(), Int::from(3));
        let t = p.tally();
        assert_eq!(t.get(0, 1), Int::from(3));
        let q = synth_triangle::<Int>(&class, 1, 0, 2).unwrap();
        assert_eq!(q.majority_outcome(), ChoiceFunction::cycle(3, &[1, 0, 2]).unwrap());
    }

    #[test]
    fn triangle_gadget_from_longer_cycle_generator() {
        let class = class_of(4, vec![four_cycle()]);
        let p = synth_triangle::<Int>(&class, 0, 1, 2).unwrap();
        assert_eq!(p.majority_outcome(), ChoiceFunction::cycle(4, &[0, 1, 2]).unwrap());
        let t = p.tally();
        assert_eq!(t.get(0, 1), Int::from(2));
        assert_eq!(t.get(1, 2), Int::from(2));
        assert_eq!(t.get(2, 0), Int::from(2));
        assert_eq!(t.get(0, 3), Int::from(0));
    }

    #[test]
    fn cycle_gadget_realizes_long_cycles() {
        let class = class_of(4, vec![four_cycle()]);
        let p = synth_cycle::<Int>(&class, &[0, 1, 2, 3]).unwrap();
        assert_eq!(p.majority_outcome(), four_cycle());
        let t = p.tally();
        assert_eq!(t.get(0, 1), Int::from(2));
        assert_eq!(t.get(3, 0), Int::from(2));
        assert_eq!(t.get(0, 2), Int::from(0));
        assert!(matches!(
            synth_cycle::<Int>(&class, &[0, 1]),
            Err(Error::DegenerateCycle)
        ));
    }

    #[test]
    fn pseudo_balanced_synthesis_hits_target_and_bound() {
        let class = class_of(3, vec![tri()]);
        let p = synth_pseudo_balanced::<Int>(&class, &tri()).unwrap();
        assert_eq!(p.majority_outcome(), tri());
        assert_eq!(p.voter_count(), Int::from(9));
        assert_eq!(voter_bound::<Int>(Category::Balanced, 3), Int::from(9));

        let empty = ChoiceFunction::new(3).unwrap();
        let p = synth_pseudo_balanced::<Int>(&class, &empty).unwrap();
        assert!(p.is_empty());

        let edge = ChoiceFunction::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            synth_pseudo_balanced::<Int>(&class, &edge),
            Err(Error::NotInClosure(_))
        ));
    }

    #[test]
    fn tiered_synthesis_matches_hand_computation() {
        let class = class_of(3, vec![ChoiceFunction::two_tier(3, &[0]).unwrap()]);
        let chain = ChoiceFunction::linear_order(&[2, 1, 0]).unwrap();
        let p = synth_tiered::<Int>(&class, &chain).unwrap();
        assert_eq!(p.majority_outcome(), chain);
        assert_eq!(p.voter_count(), Int::from(12));
        let mut mults: Vec<Int> = p.iter().map(|(_, m)| m.clone()).collect();
        mults.sort();
        assert_eq!(mults, vec![Int::from(2), Int::from(4), Int::from(6)]);
        // Adjacent tiers differ by margin 2, separated tiers by 4.
        let t = p.tally();
        assert_eq!(t.get(2, 1), Int::from(2));
        assert_eq!(t.get(1, 0), Int::from(2));
        assert_eq!(t.get(2, 0), Int::from(4));

        let empty = ChoiceFunction::new(3).unwrap();
        let p = synth_tiered::<Int>(&class, &empty).unwrap();
        assert_eq!(p.majority_outcome(), empty);
        assert_eq!(p.voter_count(), Int::from(6));

        assert!(matches!(
            synth_tiered::<Int>(&class, &tri()),
            Err(Error::NotInClosure(_))
        ));
    }

    #[test]
    fn mixed_synthesis_matches_hand_computation() {
        let class = class_of(3, vec![tri(), ChoiceFunction::two_tier(3, &[0]).unwrap()]);
        let edge = ChoiceFunction::from_edges(3, &[(1, 0)]).unwrap();
        let p = synth_mixed::<Int>(&class, &edge, true).unwrap();
        assert_eq!(p.majority_outcome(), edge);
        assert_eq!(p.voter_count(), Int::from(12));
        let t = p.tally();
        assert_eq!(t.get(1, 0), Int::from(9));
        assert_eq!(t.get(1, 2), Int::from(0));
        assert_eq!(t.get(0, 2), Int::from(0));
    }

    #[test]
    fn mixed_reduction_divides_common_factor() {
        // The four-cycle generator gives triangle margin 2, matching the
        // triangle copy count, so reduction halves the gadget.
        let class = class_of(4, vec![four_cycle(), ChoiceFunction::two_tier(4, &[0]).unwrap()]);
        let edge = ChoiceFunction::from_edges(4, &[(1, 0)]).unwrap();
        let reduced = synth_mixed::<Int>(&class, &edge, true).unwrap();
        let full = synth_mixed::<Int>(&class, &edge, false).unwrap();
        assert_eq!(reduced.majority_outcome(), edge);
        assert_eq!(full.majority_outcome(), edge);
        assert_eq!(full.voter_count(), reduced.voter_count() * Int::from(2));
    }

    #[test]
    fn single_edge_synthesis_from_chaotic_generator() {
        let class = class_of(3, vec![ChoiceFunction::linear_order(&[0, 1, 2]).unwrap()]);
        for (x, y) in [(0, 1), (1, 0), (2, 0)] {
            let p = synth_single_edge::<Int>(&class, x, y).unwrap();
            assert_eq!(
                p.majority_outcome(),
                ChoiceFunction::from_edges(3, &[(x, y)]).unwrap()
            );
        }
    }

    #[test]
    fn chaotic_synthesis_covers_multi_edge_targets() {
        let class = class_of(3, vec![ChoiceFunction::linear_order(&[0, 1, 2]).unwrap()]);
        let target = ChoiceFunction::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let p = synth_chaotic::<Int>(&class, &target).unwrap();
        assert_eq!(p.majority_outcome(), target);
    }

    #[test]
    fn bounds_freeze() {
        assert_eq!(voter_bound::<Int>(Category::Trivial, 4), Int::from(0));
        assert_eq!(voter_bound::<Int>(Category::Balanced, 3), Int::from(9));
        assert_eq!(voter_bound::<Int>(Category::Partisan, 4), Int::from(96));
        assert_eq!(voter_bound::<Int>(Category::Mixed, 4), Int::from(240));
        assert_eq!(voter_bound::<Int>(Category::Chaotic, 4), Int::from(24576));
    }

    #[test]
    fn dispatch_synthesizes_each_category_within_bounds() {
        let cases: Vec<(SymmetricClass, ChoiceFunction)> = vec![
            (class_of(3, vec![ChoiceFunction::new(3).unwrap()]), ChoiceFunction::new(3).unwrap()),
            (class_of(3, vec![tri()]), tri()),
            (
                class_of(3, vec![ChoiceFunction::two_tier(3, &[0]).unwrap()]),
                ChoiceFunction::linear_order(&[2, 1, 0]).unwrap(),
            ),
            (
                class_of(3, vec![tri(), ChoiceFunction::two_tier(3, &[0]).unwrap()]),
                ChoiceFunction::from_edges(3, &[(1, 0)]).unwrap(),
            ),
            (
                class_of(3, vec![ChoiceFunction::linear_order(&[0, 1, 2]).unwrap()]),
                ChoiceFunction::from_edges(3, &[(0, 2), (1, 2)]).unwrap(),
            ),
        ];
        for (class, target) in cases {
            let report = synth_any::<Int>(&class, &target).unwrap();
            assert_eq!(report.profile.majority_outcome(), target);
            assert!(report.within_bound, "{:?} exceeds bound", report.case);
        }
    }

    #[test]
    fn dispatch_rejects_targets_outside_the_closure() {
        let edge = ChoiceFunction::from_edges(3, &[(0, 1)]).unwrap();
        let balanced = class_of(3, vec![tri()]);
        assert!(matches!(
            synth_any::<Int>(&balanced, &edge),
            Err(Error::NotInClosure(_))
        ));
        let partisan = class_of(3, vec![ChoiceFunction::two_tier(3, &[0]).unwrap()]);
        assert!(matches!(
            synth_any::<Int>(&partisan, &tri()),
            Err(Error::NotInClosure(_))
        ));
        let void = class_of(3, vec![]);
        assert!(matches!(
            synth_any::<Int>(&void, &ChoiceFunction::new(3).unwrap()),
            Err(Error::NotInClosure(_))
        ));
    }
}
