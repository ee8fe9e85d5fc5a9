//! Encoding, rewriting and comb extraction on randomly generated L-schemes.

use proptest::prelude::*;
use ruled_braids::comb::Gen;
use ruled_braids::lscheme::{applicable_rewrites, rule, Event, LScheme, LSchemeError, RootLetter, RuleSet, RULES};

/// Builds a valid event sequence from arbitrary choices by only offering
/// events allowed at the current real-point count.
fn build(m: usize, divisors: bool, choices: &[usize]) -> Vec<Event> {
    let mut high = true;
    let mut out = Vec::new();
    for &c in choices {
        let mut opts = Vec::new();
        if high {
            opts.extend((1..m).map(Event::TangencyDescend));
            opts.extend((1..m).map(Event::Crossing));
            if divisors {
                opts.extend([Event::DivisorDescend, Event::DivisorAscend]);
            }
        } else {
            opts.extend((1..m).map(Event::TangencyAscend));
            opts.extend((1..m).map(Event::SolitaryOval));
            opts.extend((1..m.saturating_sub(2)).map(Event::Crossing));
            if divisors && m >= 3 {
                opts.extend([Event::DivisorDescend, Event::DivisorAscend]);
            }
        }
        let e = opts[c % opts.len()];
        high = match e {
            Event::TangencyDescend(_) => false,
            Event::TangencyAscend(_) => true,
            _ => high,
        };
        out.push(e);
    }
    if !high {
        out.push(Event::TangencyAscend(1));
    }
    out
}

fn scheme() -> impl Strategy<Value = LScheme> {
    (3usize..=5, 0u32..4, prop::collection::vec(any::<usize>(), 0..14))
        .prop_map(|(m, n, c)| LScheme::new(n, m, build(m, true, &c)).unwrap())
}

fn trigonal() -> impl Strategy<Value = LScheme> {
    (0u32..5, prop::collection::vec(any::<usize>(), 0..16))
        .prop_map(|(n, c)| LScheme::new(n, 3, build(3, false, &c)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_round_trips(ls in scheme()) {
        let back: LScheme = ls.to_string().parse().unwrap();
        prop_assert_eq!(back, ls);
    }

    #[test]
    fn compiled_braid_is_substitution_times_twists(ls in scheme()) {
        let m = ls.strands() as i64;
        let sub = ls.substituted_word().unwrap();
        let c = ls.compile().unwrap();
        prop_assert_eq!(&c.real, &sub.free_reduce());
        prop_assert!(c.real.equals(&sub));
        prop_assert_eq!(c.delta_power, ls.surface_index() as i64);
        let b = ls.to_braid().unwrap();
        prop_assert_eq!(b.exponent_sum(), sub.exponent_sum() + ls.surface_index() as i64 * m * (m - 1) / 2);
        prop_assert_eq!(b.strands(), ls.strands());
    }

    #[test]
    fn rewrites_change_length_by_their_delta(ls in scheme()) {
        for set in [RuleSet::Pseudo, RuleSet::Alg] {
            for (id, pos) in applicable_rewrites(&ls, set) {
                let r = rule(set, id).unwrap();
                let (out, removed, inserted) = r.apply_at(&ls, pos).unwrap();
                prop_assert!(out.validate().is_ok());
                prop_assert_eq!(inserted as isize - removed as isize, r.event_delta, "{}", id);
                prop_assert_eq!(out.events().len() as isize, ls.events().len() as isize + r.event_delta);
            }
        }
    }

    #[test]
    fn trigonal_weights_halve_exactly(ls in trigonal()) {
        let r = ls.tangencies().unwrap();
        let roomy = LScheme::new(ls.surface_index().max(r.len() as u32), 3, ls.events().to_vec()).unwrap();
        for s in [&ls, &roomy] {
            match s.weighted_comb() {
                Ok(w) => {
                    if r.is_empty() {
                        prop_assert!(w.comb.is_empty());
                    } else {
                        prop_assert!(w.comb.len() >= r.len());
                        prop_assert!(matches!(w.comb.gens()[0], Gen::G3 | Gen::G5));
                    }
                }
                Err(e) => prop_assert!(matches!(e, LSchemeError::NegativeWeight { .. }), "{}", e),
            }
        }
        prop_assert!(roomy.weighted_comb().is_ok());
    }

    #[test]
    fn root_scheme_follows_the_tangencies(ls in trigonal()) {
        let r = ls.tangencies().unwrap();
        let rs = ls.root_scheme().unwrap();
        let count = |l: RootLetter| rs.0.iter().filter(|&&x| x == l).count();
        prop_assert_eq!(count(RootLetter::R), r.len());
        for (c, mult) in rs.entries() {
            prop_assert_eq!(mult as usize, match c { 'p' => 3, 'q' => 2, _ => 1 });
        }
    }
}

#[test]
fn every_rule_has_a_witness() {
    let corpus = [
        "n=0 m=4; x1 >2 <2",
        "n=0 m=4; >2 x1 <2",
        "n=0 m=4; x1 x3 >1 <1",
        "n=0 m=4; \\ x1 / x2 >2 <2",
        "n=0 m=4; >3 \\ <3 >3 / <3",
        "n=0 m=4; >3 o1 o3 <3",
        "n=0 m=3; >2 <1 >2 <2",
        "n=0 m=3; >2 <2 >1 <1",
        "n=0 m=3; >2 o2 <2",
        "n=0 m=3; >1 <2 >1 <1",
        "n=0 m=4; >3 x1 o2 x1 <3",
        "n=0 m=4; >1 <2 x3 >2 <2",
        "n=0 m=6; >1 <1 >3 <3",
        "n=0 m=4; >2 o3 <3 >2 <2",
        "n=0 m=4; >1 <2 >3 o3 <3",
        "n=0 m=4; \\ >3 <3",
        "n=0 m=4; >3 <3 /",
        "n=0 m=3; >2 <2 >1 <2",
    ];
    let mut seen = std::collections::BTreeSet::new();
    for s in corpus {
        let ls: LScheme = s.parse().unwrap();
        for set in [RuleSet::Pseudo, RuleSet::Alg] {
            for (id, _) in applicable_rewrites(&ls, set) {
                seen.insert(id);
            }
        }
    }
    let missing: Vec<&str> = RULES.iter().map(|r| r.id).filter(|id| !seen.contains(id)).collect();
    assert!(missing.is_empty(), "rules never applied: {missing:?}");
}
