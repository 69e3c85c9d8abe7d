//! Shared fixtures, reference predicates, and samplers for the
//! integration suites.
//!
//! The reference predicates here are deliberately written against the
//! definitions, with different algorithms than the library uses, so the
//! suites compare two independent computations.

#![allow(dead_code)]

use majlab::choice::ChoiceFunction;
use majlab::classify::{valence_pairs, SymmetricClass, ValenceDecomposition};
use majlab::{Int, Rat};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn cycle(n: usize, vertices: &[usize]) -> ChoiceFunction {
    ChoiceFunction::cycle(n, vertices).unwrap()
}

pub fn triangle(n: usize) -> ChoiceFunction {
    cycle(n, &[0, 1, 2])
}

pub fn partisan_one(n: usize) -> ChoiceFunction {
    ChoiceFunction::two_tier(n, &[0]).unwrap()
}

pub fn linear(n: usize) -> ChoiceFunction {
    let ranking: Vec<usize> = (0..n).collect();
    ChoiceFunction::linear_order(&ranking).unwrap()
}

pub fn single_edge(n: usize) -> ChoiceFunction {
    ChoiceFunction::from_edges(n, &[(0, 1)]).unwrap()
}

pub fn empty(n: usize) -> ChoiceFunction {
    ChoiceFunction::new(n).unwrap()
}

pub fn class_of(n: usize, generators: Vec<ChoiceFunction>) -> SymmetricClass {
    SymmetricClass::new(n, generators).unwrap()
}

/// The named fixture classes at `n`: one per category, with a second
/// chaotic generator, and at `n >= 4` additionally the 4-cycle family.
pub fn fixtures(n: usize) -> Vec<(&'static str, SymmetricClass)> {
    let mut out = vec![
        ("trivial", class_of(n, vec![empty(n)])),
        ("triangle", class_of(n, vec![triangle(n)])),
        ("partisan", class_of(n, vec![partisan_one(n)])),
        ("mixed", class_of(n, vec![triangle(n), partisan_one(n)])),
        ("chaotic order", class_of(n, vec![linear(n)])),
        ("chaotic edge", class_of(n, vec![single_edge(n)])),
    ];
    if n >= 4 {
        out.insert(2, ("four-cycle", class_of(n, vec![cycle(n, &[0, 1, 2, 3])])));
        out.push((
            "chaotic fork",
            class_of(n, vec![ChoiceFunction::from_edges(n, &[(0, 1), (0, 2)]).unwrap()]),
        ));
    }
    out
}

/// Reference predicate: does some decided path lead from `from` to `to`?
/// Plain depth-first search, independent of the library's reachability.
pub fn reaches(d: &ChoiceFunction, from: usize, to: usize) -> bool {
    let mut seen = vec![false; d.n()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for w in 0..d.n() {
            if w != v && !seen[w] && d.decide(v, w) == Some(v) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Reference predicate: every decided edge closes into a directed cycle,
/// i.e. the loser reaches the winner back.
pub fn pseudo_balanced_reference(d: &ChoiceFunction) -> bool {
    d.edges().iter().all(|&(w, l)| reaches(d, l, w))
}

/// All ordered set partitions of `{0, .., n-1}`, each written lowest tier
/// first with sorted parts.
pub fn ordered_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(remaining: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if remaining.is_empty() {
            out.push(acc.clone());
            return;
        }
        // Choose the next part as any nonempty subset of what is left.
        let k = remaining.len();
        for mask in 1u32..(1 << k) {
            let part: Vec<usize> =
                (0..k).filter(|i| mask >> i & 1 == 1).map(|i| remaining[i]).collect();
            let rest: Vec<usize> =
                (0..k).filter(|i| mask >> i & 1 == 0).map(|i| remaining[i]).collect();
            acc.push(part);
            go(&rest, acc, out);
            acc.pop();
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    go(&all, &mut Vec::new(), &mut out);
    out
}

/// The choice function whose decisions go exactly from higher tier to
/// lower, for tiers listed lowest first.
pub fn function_of_tiers(n: usize, tiers: &[Vec<usize>]) -> ChoiceFunction {
    let mut c = ChoiceFunction::new(n).unwrap();
    for (hi, upper) in tiers.iter().enumerate() {
        for lower in &tiers[..hi] {
            for &w in upper {
                for &l in lower {
                    c.set(w, l);
                }
            }
        }
    }
    c
}

/// Uniformly random trit on every pair.
pub fn random_function<R: Rng>(rng: &mut R, n: usize) -> ChoiceFunction {
    let mut c = ChoiceFunction::new(n).unwrap();
    for x in 0..n {
        for y in x + 1..n {
            match rng.gen_range(0..3) {
                0 => c.set(x, y),
                1 => c.set(y, x),
                _ => {}
            }
        }
    }
    c
}

/// Random member of a balanced family's closure: take a random function
/// and delete decided pairs off every directed cycle until none remain.
pub fn random_pseudo_balanced<R: Rng>(rng: &mut R, n: usize) -> ChoiceFunction {
    let mut c = random_function(rng, n);
    loop {
        let stray: Vec<(usize, usize)> =
            c.edges().into_iter().filter(|&(w, l)| !reaches(&c, l, w)).collect();
        if stray.is_empty() {
            return c;
        }
        for (w, l) in stray {
            c.clear(w, l);
        }
    }
}

/// Random member of a partisan family's closure: a random ordered set
/// partition, read as tiers.
pub fn random_tiered<R: Rng>(rng: &mut R, n: usize) -> ChoiceFunction {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut tiers: Vec<Vec<usize>> = vec![vec![order[0]]];
    for &x in &order[1..] {
        if rng.gen_bool(0.5) {
            tiers.push(Vec::new());
        }
        tiers.last_mut().unwrap().push(x);
    }
    function_of_tiers(n, &tiers)
}

/// Assert the witness meets its defining conditions on `c`: every term's
/// point genuinely carries its tag, coefficients are a convex combination,
/// the weighted point sum is the origin, and the tag weights differ.
pub fn check_witness(c: &ChoiceFunction, dec: &ValenceDecomposition<Int>) {
    let mut total = Rat::zero();
    let mut sum = (Rat::zero(), Rat::zero());
    let mut tag_weight = [Rat::zero(), Rat::zero(), Rat::zero()];
    for (vp, coeff) in &dec.terms {
        let in_tagged_set = valence_pairs(c, vp.tag).iter().any(|q| q.point == vp.point);
        assert!(in_tagged_set, "witness point {:?} not among tag {} points", vp.point, vp.tag);
        let (u, w) = vp.witness;
        assert_eq!(c.weight(u, w), vp.tag, "witness pair carries the wrong weight");
        assert_eq!(
            vp.point,
            (c.valence(u) - vp.tag as isize, c.valence(w) + vp.tag as isize),
            "witness pair does not produce the recorded point"
        );
        assert!(coeff.is_positive() && *coeff <= Rat::one(), "coefficient outside (0, 1]");
        total += coeff.clone();
        sum.0 += Rat::from_integer(Int::from(vp.point.0)) * coeff.clone();
        sum.1 += Rat::from_integer(Int::from(vp.point.1)) * coeff.clone();
        tag_weight[(vp.tag + 1) as usize] += coeff.clone();
    }
    assert!(total.is_one(), "coefficients sum to {total}, not 1");
    assert!(sum.0.is_zero() && sum.1.is_zero(), "weighted point sum misses the origin");
    assert_ne!(tag_weight[0], tag_weight[2], "tag weights balance out");
    assert_eq!(tag_weight[2].clone() - tag_weight[0].clone(), dec.imbalance);
}
