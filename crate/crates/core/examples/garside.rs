//! Garside left normal forms: deciding triviality and equality of braids.

use ruled_braids::braid::BraidWord;

fn main() {
    let trivial: BraidWord =
        "strands=4; s2^-1 s3^-1 s2 s3^-1 s2^-1 s3^-3 s2^-1 s3 s1^-1 s2^-2 s3^-1 s1 s2^2 s1^-1 s2^-2 s1^-1 s2^-1 D^2"
            .parse()
            .unwrap();
    println!("normal form {}  trivial = {}", trivial.garside_normal_form(), trivial.is_trivial());

    let b: BraidWord = "strands=3; s1^-1 s2^-1 s1^-2 s2^-1 s1 s2^-4 s1^-1 D^3".parse().unwrap();
    let nf = b.garside_normal_form();
    println!("normal form {nf}  (canonical length {})", nf.canonical_length());

    let left: BraidWord = "strands=3; D^-3 s2^3 s1^2 s2^2 s1^2".parse().unwrap();
    let right: BraidWord = "strands=3; s2^3 s1^2 s2^2 s1^2 D^-3".parse().unwrap();
    println!("b = D^-3 P: {}", b.equals(&left));
    println!("b = P D^-3: {}", b.equals(&right));
}
