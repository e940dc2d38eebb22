//! Samples, prefix-tree acceptors, consistency graphs and complete DFAs.

mod apta;
mod cg;
mod dfa;
pub mod io;
mod sample;

pub use apta::{Apta, AptaNode};
pub use cg::{find_greedy_clique, ConsistencyGraph};
pub use dfa::{Dfa, Order};
pub use sample::{Alphabet, Label, Sample, Word};
