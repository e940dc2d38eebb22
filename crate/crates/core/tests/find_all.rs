mod common;

use std::collections::BTreeSet;
use std::time::Duration;

use common::{fig_sample, random_sample, rng, unused_transition_sample};
use dfaid::encode::SbpStrategy;
use dfaid::sat::Backend;
use dfaid::search::{backtracking_find_all, brute_force_structures, find_all, FindAllStrategy};
use dfaid::{Alphabet, Apta, Dfa, Error, Label, Order, Sample};

/// Automata with exactly `colors` states that classify the sample, whose
/// transitions not exercised by the sample are self-loops and whose
/// accepting states are exactly those some positive string ends in.
fn filtered_brute_force(apta: &Apta, colors: usize) -> BTreeSet<Vec<usize>> {
    let l = apta.symbols();
    let mut out = BTreeSet::new();
    for table in brute_force_structures(l, colors).unwrap().iter() {
        let mut state = vec![0; apta.len()];
        let mut used = vec![false; table.len()];
        for v in 1..apta.len() {
            let node = apta.node(v);
            let cell = state[node.parent.unwrap()] * l + node.symbol.unwrap();
            used[cell] = true;
            state[v] = table[cell];
        }
        if (0..table.len()).any(|cell| !used[cell] && table[cell] != cell / l) {
            continue;
        }
        let mut accepting = vec![false; colors];
        for v in apta.accepting() {
            accepting[state[v]] = true;
        }
        if apta.rejecting().any(|v| accepting[state[v]]) {
            continue;
        }
        let mut key = table.clone();
        key.extend(accepting.iter().map(|&a| usize::from(a)));
        out.insert(key);
    }
    out
}

fn key_of(dfa: &Dfa) -> Vec<usize> {
    let canon = dfa.canonicalize(Order::Bfs).unwrap();
    let mut key = canon.table().to_vec();
    key.extend(canon.accepting().iter().map(|&a| usize::from(a)));
    key
}

fn keys(dfas: &[Dfa]) -> BTreeSet<Vec<usize>> {
    let set: BTreeSet<_> = dfas.iter().map(key_of).collect();
    assert_eq!(set.len(), dfas.len(), "duplicate automata up to isomorphism");
    set
}

fn enumerate(sample: &Sample, colors: usize, strategy: FindAllStrategy, sbp: SbpStrategy) -> Vec<Dfa> {
    find_all(sample, colors, strategy, sbp, &Backend::Builtin, None).unwrap().dfas
}

#[test]
fn enumerators_agree_with_each_other_and_brute_force() {
    let mut r = rng(11);
    for case in 0..60 {
        let symbols = 1 + case % 2;
        let sample = random_sample(&mut r, symbols, 9);
        let apta = Apta::build(&sample);
        for colors in 1..=4 {
            let truth = filtered_brute_force(&apta, colors);
            let backtracked = keys(&backtracking_find_all(&apta, colors));
            assert_eq!(backtracked, truth, "backtracking, case {case} C={colors}");
            for sbp in [SbpStrategy::Bfs, SbpStrategy::Dfs] {
                for strategy in [FindAllStrategy::Restart, FindAllStrategy::Incremental] {
                    let dfas = enumerate(&sample, colors, strategy, sbp);
                    for dfa in &dfas {
                        assert!(dfa.consistent(&sample, 0));
                        assert!(dfa.is_canonical(sbp.order().unwrap()));
                    }
                    assert_eq!(keys(&dfas), truth, "{strategy} {sbp}, case {case} C={colors}");
                }
            }
        }
    }
}

#[test]
fn running_example_has_a_unique_minimal_automaton() {
    let sample = fig_sample();
    assert!(enumerate(&sample, 2, FindAllStrategy::Incremental, SbpStrategy::Bfs).is_empty());
    let dfas = enumerate(&sample, 3, FindAllStrategy::Incremental, SbpStrategy::Bfs);
    assert_eq!(dfas.len(), 1);
    assert_eq!(backtracking_find_all(&Apta::build(&sample), 3).len(), 1);
}

#[test]
fn unused_transitions_become_self_loops() {
    let sample = unused_transition_sample();
    let apta = Apta::build(&sample);
    for strategy in [FindAllStrategy::Restart, FindAllStrategy::Incremental] {
        let dfas = enumerate(&sample, 3, strategy, SbpStrategy::Bfs);
        assert!(!dfas.is_empty());
        for dfa in &dfas {
            let mut used = BTreeSet::new();
            let mut state = vec![0; apta.len()];
            for v in 1..apta.len() {
                let node = apta.node(v);
                let q = state[node.parent.unwrap()];
                used.insert((q, node.symbol.unwrap()));
                state[v] = dfa.next(q, node.symbol.unwrap());
            }
            for q in 0..dfa.size() {
                for s in 0..dfa.symbols() {
                    if !used.contains(&(q, s)) {
                        assert_eq!(dfa.next(q, s), q, "state {q} symbol {s}");
                    }
                }
            }
        }
    }
}

#[test]
fn contradictory_single_state_has_no_automaton() {
    let sample = Sample::from_strs(&["a"], &["b"]).unwrap();
    for sbp in [SbpStrategy::Bfs, SbpStrategy::Dfs, SbpStrategy::None] {
        assert!(enumerate(&sample, 1, FindAllStrategy::Restart, sbp).is_empty());
    }
}

#[test]
fn root_only_sample_has_one_single_state_automaton() {
    let sample = Sample::new(Alphabet::numeric(2), [(vec![], Label::Accept)]).unwrap();
    let dfas = enumerate(&sample, 1, FindAllStrategy::Incremental, SbpStrategy::Bfs);
    assert_eq!(dfas.len(), 1);
    assert_eq!(dfas[0].table(), &[0, 0]);
    assert!(dfas[0].is_accepting(0));
    let empty = Sample::empty(Alphabet::numeric(2));
    assert_eq!(enumerate(&empty, 1, FindAllStrategy::Restart, SbpStrategy::Dfs).len(), 1);
}

#[test]
fn clique_larger_than_the_size_gives_an_empty_enumeration() {
    let report = find_all(&fig_sample(), 2, FindAllStrategy::Restart, SbpStrategy::Clique, &Backend::Builtin, None).unwrap();
    assert!(report.dfas.is_empty());
}

#[test]
fn expired_deadline_reports_a_partial_enumeration() {
    let sample = unused_transition_sample();
    match find_all(&sample, 4, FindAllStrategy::Restart, SbpStrategy::Bfs, &Backend::Builtin, Some(Duration::ZERO)) {
        Err(Error::PartialEnumeration { found }) => assert!(found.is_empty()),
        other => panic!("expected a partial enumeration, got {other:?}"),
    }
}
