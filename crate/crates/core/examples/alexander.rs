//! Alexander polynomials and determinants of braid closures via the reduced
//! Burau representation.

use ruled_braids::braid::BraidWord;
use ruled_braids::invariants::{alexander_polynomial, determinant_of_closure, reduced_burau, InvariantsReport};

fn main() {
    let b: BraidWord = "strands=3; s2^-7 s1 s2 D^2".parse().unwrap();
    println!("{}\n", InvariantsReport::of(&b).unwrap());

    let sigma: BraidWord = "strands=3; s1".parse().unwrap();
    println!(
        "Burau(s1) = {:?}\n",
        reduced_burau(&sigma)
            .rows()
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    );

    for (a, c) in [(5, 0), (3, 2), (2, 3)] {
        let text = format!(
            "strands=4; s2^-{a} s3^-1 s2 {} s1^-3 s1 s2^2 s1^-4 s2^-1 s3 D^2",
            if c > 0 { format!("s3^-{c}") } else { String::new() }
        );
        let b: BraidWord = text.parse().unwrap();
        println!(
            "({a},{c}): det = {}, alexander = {}",
            determinant_of_closure(&b).unwrap(),
            alexander_polynomial(&b).unwrap()
        );
    }
}
