//! Quasipositivity obstructions and the combined verdict.

use ruled_braids::braid::BraidWord;
use ruled_braids::invariants::quasipositivity_verdict;

fn main() {
    for text in [
        "strands=3; s2^-7 s1 s2 D^2",
        "strands=4; s2^-5 s3^-1 s2 s1^-3 s1 s2^2 s1^-4 s2^-1 s3 D^2",
        "strands=4; s2^-2 s3^-1 s2 s3^-3 s1^-3 s1 s2^2 s1^-4 s2^-1 s3 D^2",
        "strands=3; s1^-1 s2^-1 s1^-1 s2^-5 s1^-1 D^3",
        "strands=3; s1 s2 s1^-1",
        "strands=3; s1 s1^-1",
        "strands=3; s1^-2",
    ] {
        let b: BraidWord = text.parse().unwrap();
        println!("{text}\n  {}\n", quasipositivity_verdict(&b).unwrap());
    }
}
