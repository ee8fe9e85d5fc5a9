//! Burau homomorphism, braid relations, Alexander invariance and Garside
//! normal forms on random words.

mod common;

use common::{word, word_on, word_pair};
use proptest::prelude::*;
use ruled_braids::braid::{BraidWord, Letter};
use ruled_braids::invariants::{alexander_polynomial, reduced_burau, BurauMatrix};

/// Inserts `lhs` and `rhs` of a braid relation at `at` in `w`.
fn with_relation(w: &BraidWord, at: usize, i: usize, j: usize) -> (BraidWord, BraidWord) {
    let m = w.strands();
    let (lhs, rhs): (Vec<usize>, Vec<usize>) =
        if i.abs_diff(j) == 1 { (vec![i, j, i], vec![j, i, j]) } else { (vec![i, j], vec![j, i]) };
    let splice = |ins: &[usize]| {
        let mut l = w.letters().to_vec();
        let at = at.min(l.len());
        l.splice(at..at, ins.iter().map(|&k| Letter::pos(k)));
        BraidWord::new(m, l).unwrap()
    };
    (splice(&lhs), splice(&rhs))
}

fn relation_case() -> impl Strategy<Value = (BraidWord, usize, usize, usize)> {
    (3usize..=5).prop_flat_map(|m| (word_on(m, 15), 0usize..16, 1..m, 1..m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn burau_is_a_homomorphism((a, b) in word_pair(5, 15)) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(reduced_burau(&ab), &reduced_burau(&a) * &reduced_burau(&b));
        let id = BurauMatrix::identity(a.strands() - 1);
        prop_assert_eq!(&reduced_burau(&a) * &reduced_burau(&a.inverse()), id);
    }

    #[test]
    fn braid_relations_hold((w, at, i, j) in relation_case()) {
        let (l, r) = with_relation(&w, at, i, j);
        prop_assert_eq!(reduced_burau(&l), reduced_burau(&r));
        prop_assert!(l.equals(&r));
    }

    #[test]
    fn exponent_sum_is_additive((a, b) in word_pair(5, 15)) {
        prop_assert_eq!(a.compose(&b).unwrap().exponent_sum(), a.exponent_sum() + b.exponent_sum());
        prop_assert_eq!(a.inverse().exponent_sum(), -a.exponent_sum());
    }

    #[test]
    fn free_reduction_preserves_the_element(w in word(5, 15)) {
        let r = w.free_reduce();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.exponent_sum(), w.exponent_sum());
        prop_assert_eq!(reduced_burau(&r), reduced_burau(&w));
        prop_assert!(r.equals(&w));
        prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn alexander_is_a_conjugacy_invariant((b, a) in word_pair(4, 10)) {
        let c = b.conjugate_by(&a).unwrap();
        prop_assert_eq!(alexander_polynomial(&c).unwrap(), alexander_polynomial(&b).unwrap());
    }

    #[test]
    fn garside_normal_form_is_canonical(w in word(5, 12)) {
        let nf = w.garside_normal_form();
        prop_assert!(nf.is_left_weighted());
        let back = nf.to_word();
        prop_assert_eq!(back.garside_normal_form(), nf.clone());
        prop_assert_eq!(reduced_burau(&back), reduced_burau(&w));
        prop_assert_eq!(nf.is_identity(), w.free_reduce().is_empty() || w.is_trivial());
    }

    #[test]
    fn inverse_products_are_trivial(w in word(5, 12)) {
        prop_assert!(w.compose(&w.inverse()).unwrap().is_trivial());
    }

    #[test]
    fn full_twist_is_central(w in word(5, 10)) {
        let d2 = BraidWord::delta_power(w.strands(), 2).unwrap();
        prop_assert!(d2.compose(&w).unwrap().equals(&w.compose(&d2).unwrap()));
    }

    #[test]
    fn garside_matches_faithful_burau((a, b) in word_pair(3, 8)) {
        prop_assert_eq!(a.equals(&b), reduced_burau(&a) == reduced_burau(&b));
        let rotated = a.conjugate_by(&b).unwrap().conjugate_by(&b.inverse()).unwrap();
        prop_assert!(rotated.equals(&a));
    }
}

#[test]
fn delta_squared_generates_the_center_in_b3() {
    let d = BraidWord::delta(3).unwrap();
    let s1: BraidWord = "strands=3; s1".parse().unwrap();
    let s2: BraidWord = "strands=3; s2".parse().unwrap();
    let lhs = d.compose(&s1).unwrap();
    let rhs = s2.compose(&d).unwrap();
    assert!(lhs.equals(&rhs));
    assert!(!d.compose(&s1).unwrap().equals(&s1.compose(&d).unwrap()));
}
