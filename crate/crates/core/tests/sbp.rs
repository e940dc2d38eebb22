mod common;

use common::all_tables;
use dfaid::encode::{EncodeOptions, Encoding, SbpStrategy};
use dfaid::sat::{Backend, SolverSession};
use dfaid::{Alphabet, Apta, ConsistencyGraph, Dfa, Label};

/// The symmetry-breaking clauses admit exactly the tables numbered in
/// traversal order.
fn check_exact_characterisation(strategy: SbpStrategy, symbols: usize, colors: usize) {
    let order = strategy.order().unwrap();
    let apta = Apta::from_words(symbols, std::iter::empty::<(&[usize], Label)>()).unwrap();
    let cg = ConsistencyGraph::build(&apta);
    let enc = Encoding::exact(&apta, &cg, colors, EncodeOptions::with_strategy(strategy)).unwrap();
    let mut admitted = 0;
    for table in all_tables(symbols, colors) {
        let mut session = SolverSession::new(Backend::Builtin, enc.formula().clone());
        for i in 0..colors {
            for s in 0..symbols {
                session.add_clause(&[enc.y(s, i, table[i * symbols + s]).pos()]).unwrap();
            }
        }
        let sat = session.solve(None).unwrap().is_sat();
        let dfa = Dfa::new(Alphabet::numeric(symbols), colors, table.clone(), vec![false; colors]).unwrap();
        assert_eq!(sat, dfa.is_canonical(order), "{strategy} C={colors} L={symbols} table {table:?}");
        admitted += usize::from(sat);
    }
    assert!(admitted > 0);
}

#[test]
fn bfs_rows_characterise_bfs_numbering() {
    for (l, c) in [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        check_exact_characterisation(SbpStrategy::Bfs, l, c);
    }
}

#[test]
fn dfs_rows_characterise_dfs_numbering() {
    for (l, c) in [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        check_exact_characterisation(SbpStrategy::Dfs, l, c);
    }
}
