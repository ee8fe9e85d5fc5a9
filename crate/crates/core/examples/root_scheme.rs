//! Root schemes and weighted combs of trigonal L-schemes.

use ruled_braids::lscheme::{LScheme, RootSchemeTable};

fn main() {
    let ls: LScheme = "n=1 m=3; >2 <1 >2 o2 <2".parse().unwrap();
    println!("scheme       {ls}");
    println!("tangencies   {:?}", ls.tangencies().unwrap());
    println!("root scheme  {}", ls.root_scheme().unwrap());
    println!("literal      {}", ls.root_scheme_with(RootSchemeTable::Literal).unwrap());
    println!("comb         {}", ls.weighted_comb().unwrap());
}
