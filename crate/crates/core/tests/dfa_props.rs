mod common;

use std::collections::HashSet;

use common::all_tables;
use dfaid::search::{brute_force_enumerate, brute_force_structures};
use dfaid::{Alphabet, Dfa, Order};
use proptest::prelude::*;

fn arb_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..=6, 1usize..=3).prop_flat_map(|(size, symbols)| {
        (
            proptest::collection::vec(0..size, size * symbols),
            proptest::collection::vec(any::<bool>(), size),
        )
            .prop_map(move |(delta, accepting)| {
                Dfa::new(Alphabet::numeric(symbols), size, delta, accepting).unwrap()
            })
    })
}

/// A permutation of `0..n` fixing 0, chosen by `key`.
fn start_fixing_permutation(n: usize, key: &[u32]) -> Vec<usize> {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.sort_by_key(|&i| key.get(i).copied().unwrap_or(0));
    std::iter::once(0).chain(rest).collect()
}

proptest! {
    #[test]
    fn canonical_forms_are_canonical_and_equivalent(dfa in arb_dfa()) {
        for order in [Order::Bfs, Order::Dfs] {
            let reachable = dfa.traversal(order).len() == dfa.size();
            match dfa.canonicalize(order) {
                Ok(canon) => {
                    prop_assert!(reachable);
                    prop_assert!(canon.is_canonical(order));
                    prop_assert!(canon.isomorphic(&dfa));
                    prop_assert_eq!(canon.canonicalize(order).unwrap(), canon);
                }
                Err(_) => prop_assert!(!reachable),
            }
        }
    }

    #[test]
    fn renaming_preserves_the_canonical_form(dfa in arb_dfa(), key in proptest::collection::vec(any::<u32>(), 6)) {
        prop_assume!(dfa.is_reachable());
        let perm = start_fixing_permutation(dfa.size(), &key);
        let renamed = dfa.renamed(&perm).unwrap();
        prop_assert!(renamed.isomorphic(&dfa));
        for order in [Order::Bfs, Order::Dfs] {
            prop_assert_eq!(renamed.canonicalize(order).unwrap(), dfa.canonicalize(order).unwrap());
        }
    }

    #[test]
    fn minimized_size_counts_distinct_reachable_languages(dfa in arb_dfa()) {
        // Two states are equivalent iff they agree on every word shorter
        // than the number of states.
        let words = words_up_to(dfa.symbols(), dfa.size());
        let signatures: HashSet<Vec<bool>> = dfa
            .traversal(Order::Bfs)
            .into_iter()
            .map(|q| {
                words
                    .iter()
                    .map(|w| dfa.is_accepting(w.iter().fold(q, |s, &a| dfa.next(s, a))))
                    .collect()
            })
            .collect();
        prop_assert_eq!(dfa.minimized_size(), signatures.len());
    }
}

fn words_up_to(symbols: usize, len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..symbols).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Number of tables whose states are all reachable and already in BFS
/// order, counted by filtering every complete table.
fn count_bfs_tables(symbols: usize, colors: usize) -> usize {
    all_tables(symbols, colors)
        .filter(|table| {
            let dfa = Dfa::new(Alphabet::numeric(symbols), colors, table.clone(), vec![false; colors]).unwrap();
            dfa.is_reachable() && dfa.is_canonical(Order::Bfs)
        })
        .count()
}

#[test]
fn structure_counts_match_exhaustive_filtering() {
    for symbols in 1..=2 {
        for colors in 1..=4 {
            let expected = count_bfs_tables(symbols, colors);
            let got = brute_force_structures(symbols, colors).unwrap();
            assert_eq!(got.len(), expected, "L={symbols} C={colors}");
        }
    }
    assert_eq!(brute_force_structures(2, 3).unwrap().len(), 216);
    assert_eq!(brute_force_structures(2, 4).unwrap().len(), 5248);
}

#[test]
fn five_state_structures_are_distinct_and_canonical() {
    let structures = brute_force_structures(2, 5).unwrap();
    assert_eq!(structures.len(), 160675);
    let distinct: HashSet<&Vec<usize>> = structures.iter().collect();
    assert_eq!(distinct.len(), structures.len());
    for table in structures.iter() {
        let dfa = Dfa::new(Alphabet::numeric(2), 5, table.clone(), vec![false; 5]).unwrap();
        assert!(dfa.is_reachable() && dfa.is_canonical(Order::Bfs));
    }
}

#[test]
fn enumeration_multiplies_structures_by_labelings() {
    let alphabet = Alphabet::numeric(2);
    assert_eq!(brute_force_enumerate(&alphabet, 1).unwrap().count(), 2);
    assert_eq!(brute_force_enumerate(&alphabet, 2).unwrap().count(), 12 * 4);
    assert_eq!(brute_force_enumerate(&alphabet, 3).unwrap().count(), 216 * 8);
    assert!(brute_force_enumerate(&alphabet, 6).is_err());
}
