//! Local rewrites of L-schemes.

use ruled_braids::lscheme::{applicable_rewrites, rewrite, LScheme, RuleSet};

fn main() {
    let ls: LScheme = "n=0 m=3; >2 <1 >2 <2".parse().unwrap();
    for set in [RuleSet::Pseudo, RuleSet::Alg] {
        for (id, pos) in applicable_rewrites(&ls, set) {
            println!("{set:?} {id} at {pos}: {}", rewrite(&ls, set, id, pos).unwrap());
        }
    }
}
