//! Degree-7 real schemes: category membership, enumeration and complex
//! schemes of symmetric M-curves.

use ruled_braids::schemes7::{enumerate, realizable, rokhlin_mischachev, symmetric_m_complex_schemes, Category};

fn main() {
    for c in Category::ALL {
        println!("{:<38} {:>3} schemes", c.name(), enumerate(c).len());
    }

    let s = "<J + 4 + 1<8>>".parse().unwrap();
    for c in [Category::SymmetricDividingPseudoholomorphic, Category::SymmetricDividingAlgebraic] {
        println!("{s} in {c}: {}", realizable(&s, c).unwrap());
    }

    for c in symmetric_m_complex_schemes() {
        let (lp, lm) = c.sign_counts();
        let (pp, pm) = c.injective_pairs();
        let ok = rokhlin_mischachev(lp as i64, lm as i64, pp as i64, pm as i64, c.real().oval_count() as i64, 3);
        println!("{c:<36} real {:<20} orientation formula {ok}", c.real().to_string());
    }
}
