//! Closures, chains and multiplicities of combs against brute-force oracles.

mod common;

use common::{all_combs, closure_by_backtracking, comb};
use num_traits::Zero;
use proptest::prelude::*;
use ruled_braids::comb::{chain_successors, find_chain, mu_count, mu_count_with, mu_exists, Comb, WeightedComb};

fn wc(s: &str) -> WeightedComb {
    s.parse().unwrap()
}

#[test]
fn stack_closure_agrees_with_backtracking_up_to_length_8() {
    for len in (0..=8).step_by(2) {
        for c in all_combs(len) {
            assert_eq!(c.is_closed(), closure_by_backtracking(&c), "{c}");
        }
    }
    for c in all_combs(1).into_iter().chain(all_combs(3)) {
        assert!(!c.is_closed());
    }
}

#[test]
fn chain_step_examples() {
    assert_eq!(chain_successors(&wc("g2 | 0 0 1")), vec![wc("g6 g1 g6 g1 g6 | 0 0 0")]);
    assert_eq!(chain_successors(&wc("g1 g1 | 2 0 0")), vec![wc("g3 g1 | 1 0 0"), wc("g1 g3 | 1 0 0")]);
    assert!(chain_successors(&wc("g3 | 0 1 0")).is_empty());
    assert_eq!(chain_successors(&wc("g5 | 3 0 1")), vec![wc("g3 g6 g3 g6 g3 | 0 0 0")]);
    assert!(chain_successors(&wc("g5 | 2 0 1")).is_empty());
    assert_eq!(chain_successors(&wc("g5 g1 | 0 1 0")), vec![wc("g4 g5 g4 g1 | 0 0 0")]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matching_is_valid(c in comb(14)) {
        match c.find_closure() {
            Some(m) => prop_assert!(m.is_valid_for(&c)),
            None => prop_assert!(!closure_by_backtracking(&c)),
        }
    }

    #[test]
    fn closed_combs_concatenate(a in comb(8), b in comb(8)) {
        if a.is_closed() && b.is_closed() {
            prop_assert!(a.concat(&b).is_closed());
        }
    }

    #[test]
    fn successors_respect_weights(c in comb(6), a in 0u32..4, b in 0u32..3, g in 0u32..3) {
        let w = WeightedComb::new(c, a, b, g);
        for s in chain_successors(&w) {
            let (a2, b2, g2) = s.weights();
            prop_assert!(a2 + b2 + g2 < a + b + g);
            prop_assert!(a2 <= a && b2 <= b && g2 <= g);
        }
    }

    #[test]
    fn pruning_does_not_change_mu(c in comb(6), a in 0u32..4, b in 0u32..3, g in 0u32..3) {
        let w = WeightedComb::new(c, a, b, g);
        let pruned = mu_count_with(&w, true);
        prop_assert_eq!(&pruned, &mu_count_with(&w, false));
        prop_assert_eq!(mu_exists(&w), !pruned.is_zero());
    }

    #[test]
    fn found_chains_are_chains(c in comb(6), a in 0u32..4, b in 0u32..3, g in 0u32..3) {
        let w = WeightedComb::new(c, a, b, g);
        if let Some(chain) = find_chain(&w) {
            prop_assert_eq!(&chain[0], &w);
            for p in chain.windows(2) {
                prop_assert!(chain_successors(&p[0]).contains(&p[1]));
            }
            let last = chain.last().unwrap();
            prop_assert!(last.is_terminal() && last.comb.is_closed());
        }
    }
}

#[test]
fn closed_terminal_comb_has_mu_one() {
    let c: Comb = "g5 g6 g1 g4 g1 g6 g5 g2 g3 g2".parse().unwrap();
    assert_eq!(mu_count(&WeightedComb::new(c, 0, 0, 0)), 1u32.into());
}
