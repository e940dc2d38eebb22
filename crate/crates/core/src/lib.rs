//! Minimal DFA identification from labeled samples by translation to SAT.
//!
//! The pipeline builds an augmented prefix tree acceptor ([`Apta`]) from a
//! [`Sample`], derives a [`ConsistencyGraph`], and emits the compact
//! colour/transition/acceptance CNF encoding. States of the sought automaton
//! can be forced into BFS or DFS enumeration order by symmetry-breaking
//! clauses, which also makes the encoding usable for noisy samples and for
//! enumerating every automaton of a given size.
//!
//! A CDCL solver is built in; any SAT-competition style solver binary can be
//! used instead through [`sat::Backend::External`].

pub mod automata;
pub mod bench;
pub mod cnf;
pub mod datagen;
pub mod encode;
mod error;
pub mod exec;
pub mod sat;
pub mod search;

pub use automata::{
    Alphabet, Apta, ConsistencyGraph, Dfa, Label, Order, Sample, Word,
};
pub use error::{Error, Result};
pub use exec::Exec;
