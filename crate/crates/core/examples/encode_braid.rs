//! Compile an L-scheme on a ruled surface into its braid.

use ruled_braids::lscheme::LScheme;

fn main() {
    let ls: LScheme = "n=2 m=4; >3 o3^2 x1 o2^2 x1^4 / <3 x2^2 >3 <3".parse().unwrap();
    println!("scheme       {ls}");
    println!("events       {}", ls.events().len());
    println!("substituted  {}", ls.substituted_word().unwrap().body());

    let c = ls.compile().unwrap();
    println!("braid        {c}");
    println!("e(b)         {}", c.word().exponent_sum());

    let small: LScheme = "n=0 m=4; >3 o2 <3".parse().unwrap();
    println!("{small}  ->  {}", small.compile().unwrap());
}
