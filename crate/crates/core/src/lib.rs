//! Braid, Alexander-polynomial and comb-chain machinery for real curves on
//! rational ruled surfaces.

pub mod braid;
pub mod cli;
pub mod comb;
pub mod fixtures;
pub mod invariants;
pub mod laurent;
pub mod lscheme;
pub mod schemes7;
