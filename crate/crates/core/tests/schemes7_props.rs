//! Consistency of the degree-7 classification tables.

use ruled_braids::schemes7::{
    enumerate, grammar, realizable, rokhlin_mischachev, symmetric_m_complex_schemes, Category, Classification,
    ComplexSchemeCode, RealSchemeCode, Shape, CLASSIFICATION_TOML,
};

fn rs(s: &str) -> RealSchemeCode {
    s.parse().unwrap()
}

#[test]
fn enumerate_agrees_with_realizable_over_the_grammar() {
    for c in Category::ALL {
        let listed = enumerate(c);
        let filtered: Vec<RealSchemeCode> =
            grammar().into_iter().map(RealSchemeCode::from_shape).filter(|s| realizable(s, c).unwrap()).collect();
        assert_eq!(listed, filtered, "{}", c.name());
    }
}

#[test]
fn any_is_the_harnack_bounded_grammar() {
    let expected = grammar()
        .into_iter()
        .filter(|s| match *s {
            Shape::Empty { a } => a <= 15,
            Shape::Nest { a, b } => a + b <= 14,
            Shape::Deep => true,
            Shape::Deep1 => false,
        })
        .count();
    assert_eq!(expected, 121);
    assert_eq!(enumerate(Category::Any).len(), expected);
}

#[test]
fn categories_are_nested() {
    let subset = |a: Category, b: Category| enumerate(a).iter().all(|s| realizable(s, b).unwrap());
    assert!(subset(Category::Symmetric, Category::Any));
    assert!(subset(Category::NonDividing, Category::Any));
    assert!(subset(Category::SymmetricNonDividing, Category::Symmetric));
    assert!(subset(Category::SymmetricDividingAlgebraic, Category::SymmetricDividingPseudoholomorphic));
    assert!(subset(Category::SymmetricDividingPseudoholomorphic, Category::Dividing));
}

#[test]
fn dividing_schemes_have_an_odd_number_of_ovals() {
    let even: Vec<RealSchemeCode> =
        enumerate(Category::Dividing).into_iter().filter(|s| s.oval_count() % 2 == 0).collect();
    assert_eq!(even, vec![RealSchemeCode::deep1()]);
}

#[test]
fn every_scheme_text_round_trips() {
    for shape in grammar() {
        let s = RealSchemeCode::from_shape(shape);
        assert_eq!(rs(&s.to_string()), s);
        assert_eq!(s.shape().unwrap(), shape);
    }
    assert_eq!(rs("<J + 1<8> + 4>"), rs("<J + 4 + 1<8>>"));
}

#[test]
fn complex_m_schemes_are_m_curves_obeying_the_orientation_formula() {
    let list = symmetric_m_complex_schemes();
    assert_eq!(list.len(), 10);
    for c in list {
        let real = c.real();
        assert_eq!(real.oval_count(), 15, "{c}");
        assert!(realizable(&real, Category::SymmetricDividingPseudoholomorphic).unwrap(), "{c}");
        let (lp, lm) = c.sign_counts();
        let (pp, pm) = c.injective_pairs();
        assert_eq!(lp + lm, 15);
        assert!(rokhlin_mischachev(lp as i64, lm as i64, pp as i64, pm as i64, 15, 3), "{c}");
        let back: ComplexSchemeCode = c.to_string().parse().unwrap();
        assert_eq!(&back, c);
    }
    let flipped = list.iter().filter(|c| {
        let (lp, lm) = c.sign_counts();
        let (pp, pm) = c.injective_pairs();
        rokhlin_mischachev(lp as i64, lm as i64, pm as i64, pp as i64, 15, 3)
    });
    assert!(flipped.count() < list.len());
}

#[test]
fn classification_data_rejects_cycles() {
    let bad = CLASSIFICATION_TOML.replace("[categories.any]\n", "[categories.any]\nbase = [\"symmetric\"]\n");
    assert!(Classification::from_toml(&bad).is_err());
    assert!(Classification::from_toml(CLASSIFICATION_TOML).is_ok());
}
