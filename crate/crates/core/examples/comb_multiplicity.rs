//! Closures of combs and the multiplicity of weighted combs.

use ruled_braids::comb::{find_chain, mu_count, mu_exists, Comb, MuCounter, WeightedComb};

fn main() {
    let c: Comb = "g5 g6 g1 g4 g1 g6 g5 g2 g3 g2".parse().unwrap();
    let m = c.find_closure().unwrap();
    println!("{c} is closed; pairs {:?}", m.pairs);

    let w: WeightedComb = "g5 g2 g5 g5 | 2 1 1".parse().unwrap();
    println!("mu({w}) = {}", mu_count(&w));
    for step in find_chain(&w).unwrap() {
        println!("  {step}");
    }

    let w1: WeightedComb =
        "(g3 g6 g1 g4 g1 g6 g5 g2 g3 g6 g1 g4 g1 g6 (g3 g2)^3 g3 g6 g1 g4 g1 g6 g5 g2, 1, 2, 0)".parse().unwrap();
    println!("mu(w1) > 0: {}", mu_exists(&w1));

    let mut counter = MuCounter::new(true);
    for text in ["g1 g4 g1 g4 | 2 0 0", "g1 g5 g1 g6 | 2 1 0", "g1 g1 | 2 0 0"] {
        let w: WeightedComb = text.parse().unwrap();
        println!("mu({w}) = {}", counter.count(&w));
    }
}
