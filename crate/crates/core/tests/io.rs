mod common;

use common::{fig_sample, random_sample, rng};
use dfaid::automata::io::{dfa_from_json, dfa_to_dot, dfa_to_json, parse_abbadingo, write_abbadingo};
use dfaid::cnf::{parse_dimacs, write_dimacs, write_dimacs_with_map, CnfFormula, Lit};
use dfaid::encode::{EncodeOptions, Encoding, SbpStrategy};
use dfaid::{Alphabet, Apta, ConsistencyGraph, Dfa, Error};
use proptest::prelude::*;

fn arb_formula() -> impl Strategy<Value = CnfFormula> {
    (1u32..=30).prop_flat_map(|vars| {
        proptest::collection::vec(
            proptest::collection::vec((1..=vars as i32, any::<bool>()), 0..5),
            0..40,
        )
        .prop_map(move |clauses| {
            let mut f = CnfFormula::with_vars(vars);
            for clause in clauses {
                let lits: Vec<Lit> = clause
                    .into_iter()
                    .map(|(v, neg)| Lit::from_dimacs(if neg { -v } else { v }).unwrap())
                    .collect();
                f.add_clause(&lits).unwrap();
            }
            f
        })
    })
}

proptest! {
    #[test]
    fn dimacs_round_trip(f in arb_formula()) {
        let text = write_dimacs(&f);
        let back = parse_dimacs(&text).unwrap();
        prop_assert_eq!(back.num_vars(), f.num_vars());
        prop_assert_eq!(back.num_clauses(), f.num_clauses());
        for i in 0..f.num_clauses() {
            prop_assert_eq!(back.clause(i), f.clause(i));
        }
    }

    #[test]
    fn abbadingo_round_trip(seed in any::<u64>(), symbols in 1usize..=3) {
        let sample = random_sample(&mut rng(seed), symbols, 30);
        let back = parse_abbadingo(&write_abbadingo(&sample)).unwrap();
        prop_assert_eq!(back.entries(), sample.entries());
        prop_assert_eq!(back.alphabet(), sample.alphabet());
    }

    #[test]
    fn json_round_trip(size in 1usize..=5, symbols in 1usize..=3, seed in any::<u64>()) {
        let delta = (0..size * symbols).map(|i| (seed as usize).wrapping_add(i * 7919) % size).collect();
        let accepting = (0..size).map(|q| seed >> q & 1 == 1).collect();
        let dfa = Dfa::new(Alphabet::numeric(symbols), size, delta, accepting).unwrap();
        prop_assert_eq!(dfa_from_json(&dfa_to_json(&dfa)).unwrap(), dfa);
    }
}

#[test]
fn annotated_dimacs_names_every_variable() {
    let apta = Apta::build(&fig_sample());
    let cg = ConsistencyGraph::build(&apta);
    let enc = Encoding::exact(&apta, &cg, 3, EncodeOptions::with_strategy(SbpStrategy::Bfs)).unwrap();
    let text = write_dimacs_with_map(enc.formula(), enc.registry());
    let comments = text.lines().filter(|l| l.starts_with("c ")).count();
    assert_eq!(comments, enc.registry().len());
    let back = parse_dimacs(&text).unwrap();
    assert_eq!(back.num_clauses(), enc.num_clauses());
    assert!(text.contains(&format!("c x 0 0 -> {}", enc.x(0, 0).index())));
}

#[test]
fn malformed_dimacs_is_rejected() {
    for text in [
        "p cnf 2 1\n1 3 0\n",
        "p cnf 2 2\n1 2 0\n",
        "1 2 0\n",
        "p cnf 2 1\n1 x 0\n",
    ] {
        assert!(parse_dimacs(text).is_err(), "{text:?}");
    }
}

#[test]
fn abbadingo_with_named_symbols_keeps_first_appearance_order() {
    let text = "3 2\n1 2 b a\n0 1 a\n1 0\n";
    let sample = parse_abbadingo(text).unwrap();
    assert_eq!(sample.alphabet().symbols(), &["b".to_string(), "a".to_string()]);
    assert_eq!(sample.len(), 3);
}

#[test]
fn abbadingo_conflicts_and_bad_lengths_are_errors() {
    assert!(matches!(parse_abbadingo("2 2\n1 1 0\n0 1 0\n"), Err(Error::ConflictingLabels { .. })));
    assert!(matches!(parse_abbadingo("1 2\n1 3 0 1\n"), Err(Error::Parse { line: 2, .. })));
}

#[test]
fn dot_merges_parallel_edges() {
    let dfa = Dfa::new(Alphabet::numeric(2), 2, vec![1, 0, 1, 1], vec![false, true]).unwrap();
    let dot = dfa_to_dot(&dfa);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 3 + 1);
    assert!(dot.contains("2 -> 2 [label=\"0,1\"]"));
}
