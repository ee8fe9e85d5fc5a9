//! Exact Laurent polynomial arithmetic: parsing, division, gcds and roots
//! on the unit circle.

use ruled_braids::laurent::{LaurentPolynomial, UNIT_CIRCLE_TOL};

fn main() {
    let p: LaurentPolynomial = "(t^2 + 1)(t^6 - 5t^5 + 12t^4 - 14t^3 + 12t^2 - 5t + 1)(t - 1)^2".parse().unwrap();
    println!("p            = {p}");
    println!("p(-1)        = {}", p.eval_int(-1).unwrap());

    let q: LaurentPolynomial = "t^2 + 1".parse().unwrap();
    println!("p / (t^2+1)  = {}", p.divide_exact(&q).unwrap());

    let s = p.multiplicity_one_part();
    println!("simple part  = {s}");
    println!("simple root on |t| = 1: {}", p.has_simple_unit_circle_root(UNIT_CIRCLE_TOL));

    let shifted = p.shift(-4).scale(&(-3).into());
    println!("unit-equivalent after shift and scale: {}", shifted.primitive_part().unit_equivalent(&p));
}
