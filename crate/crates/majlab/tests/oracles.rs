//! Library predicates checked against independently derived references:
//! a depth-first cycle search, explicit ordered set partitions, and
//! hand-expanded orbit and electorate figures.

mod common;

use common::*;
use majlab::choice::{all_functions, ChoiceFunction};
use majlab::classify::{is_balanced, is_partisan, is_pseudo_balanced, tiers};
use majlab::closure::{enumerate_closure, weights_to_profile};
use majlab::{Int, Rat};
use std::collections::BTreeSet;

#[test]
fn pseudo_balance_matches_depth_first_search() {
    for n in [3, 4] {
        for d in all_functions(n) {
            assert_eq!(
                is_pseudo_balanced(&d),
                pseudo_balanced_reference(&d),
                "disagreement on {}",
                d.canonical_key()
            );
        }
    }
}

#[test]
fn tiered_functions_are_exactly_ordered_partitions() {
    for n in [3, 4] {
        let mut reference = BTreeSet::new();
        for partition in ordered_set_partitions(n) {
            let c = function_of_tiers(n, &partition);
            // The reading back recovers the same partition, lowest first.
            assert_eq!(tiers(&c), Some(partition));
            reference.insert(c);
        }
        let accepted: BTreeSet<ChoiceFunction> =
            all_functions(n).filter(|c| tiers(c).is_some()).collect();
        assert_eq!(accepted, reference);
        assert_eq!(reference.len(), if n == 3 { 13 } else { 75 });
    }
}

#[test]
fn partisan_means_exactly_two_tiers() {
    for n in [3, 4] {
        for c in all_functions(n) {
            let two = tiers(&c).map_or(false, |t| t.len() == 2);
            assert_eq!(is_partisan(&c), two, "disagreement on {}", c.canonical_key());
        }
    }
}

#[test]
fn balanced_functions_are_pseudo_balanced() {
    for n in [3, 4] {
        for c in all_functions(n) {
            if is_balanced(&c) {
                assert!(is_pseudo_balanced(&c), "balanced but acyclic: {}", c.canonical_key());
            }
        }
    }
}

#[test]
fn closure_sizes_match_hand_counts() {
    let tri3 = class_of(3, vec![triangle(3)]);
    assert_eq!(enumerate_closure::<Int>(&tri3, true).unwrap().len(), 3);

    let part3 = class_of(3, vec![partisan_one(3)]);
    assert_eq!(enumerate_closure::<Int>(&part3, true).unwrap().len(), 13);

    let part4 = class_of(4, vec![partisan_one(4)]);
    assert_eq!(enumerate_closure::<Int>(&part4, false).unwrap().len(), 75);

    let order3 = class_of(3, vec![linear(3)]);
    assert_eq!(enumerate_closure::<Int>(&order3, true).unwrap().len(), 27);
}

#[test]
fn orbit_sizes_match_hand_counts() {
    let cases: [(ChoiceFunction, usize); 6] = [
        (triangle(3), 2),
        (ChoiceFunction::two_tier(4, &[0]).unwrap(), 4),
        (cycle(4, &[0, 1, 2, 3]), 6),
        (triangle(4), 8),
        (linear(4), 24),
        (ChoiceFunction::from_edges(4, &[(0, 1), (0, 2)]).unwrap(), 12),
    ];
    for (c, size) in cases {
        assert_eq!(c.orbit().unwrap().len(), size, "orbit of {}", c.canonical_key());
    }
}

#[test]
fn profile_from_weights_clears_denominators() {
    let members: Vec<ChoiceFunction> = all_functions(3).take(3).collect();
    let weights = vec![
        (members[0].clone(), Rat::new(Int::from(1), Int::from(6))),
        (members[1].clone(), Rat::new(Int::from(1), Int::from(10))),
        (members[2].clone(), Rat::new(Int::from(11), Int::from(15))),
    ];
    let profile = weights_to_profile(&weights).unwrap();
    assert_eq!(profile.voter_count(), Int::from(30));
    let mults: Vec<Int> = profile.iter().map(|(_, m)| m.clone()).collect();
    let mut expected = vec![Int::from(5), Int::from(3), Int::from(22)];
    expected.sort();
    let mut got = mults.clone();
    got.sort();
    assert_eq!(got, expected);
}
