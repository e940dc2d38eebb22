use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::automata::{Alphabet, Apta, Dfa, Label};
use crate::{Error, Exec, Result};

pub const ORACLE_MAX_COLORS: usize = 5;
pub const ORACLE_MAX_SYMBOLS: usize = 2;

type Structures = Arc<Vec<Vec<usize>>>;

fn guard(symbols: usize, colors: usize) -> Result<()> {
    if colors == 0 || colors > ORACLE_MAX_COLORS || symbols == 0 || symbols > ORACLE_MAX_SYMBOLS {
        return Err(Error::OracleGuard(format!(
            "brute force covers 1..={ORACLE_MAX_COLORS} states over 1..={ORACLE_MAX_SYMBOLS} symbols, \
             asked for {colors} states over {symbols}"
        )));
    }
    Ok(())
}

/// Transition tables of all complete automata with `colors` states over
/// `symbols` symbols whose states are numbered in BFS order from state 0,
/// i.e. one table per isomorphism class of reachable transition structures.
/// Cached per shape.
pub fn brute_force_structures(symbols: usize, colors: usize) -> Result<Structures> {
    guard(symbols, colors)?;
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Structures>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(symbols, colors)) {
        return Ok(Arc::clone(s));
    }
    let mut out = Vec::new();
    let mut table = vec![0; symbols * colors];
    extend(&mut table, 0, 1, symbols, colors, &mut out);
    let structures = Arc::new(out);
    cache
        .lock()
        .unwrap()
        .insert((symbols, colors), Arc::clone(&structures));
    Ok(structures)
}

/// Fills `table[pos..]`; `discovered` states have been numbered so far. The
/// state owning `pos` must already be discovered, and a fresh target takes
/// the next number.
fn extend(table: &mut [usize], pos: usize, discovered: usize, symbols: usize, colors: usize, out: &mut Vec<Vec<usize>>) {
    if pos == table.len() {
        if discovered == colors {
            out.push(table.to_vec());
        }
        return;
    }
    if pos / symbols >= discovered {
        return;
    }
    for t in 0..=discovered.min(colors - 1) {
        table[pos] = t;
        let next = if t == discovered { discovered + 1 } else { discovered };
        extend(table, pos + 1, next, symbols, colors, out);
    }
}

/// One representative of every isomorphism class of reachable complete
/// automata with `colors` states: each BFS-numbered structure with each of
/// the `2^colors` acceptance sets.
pub fn brute_force_enumerate(alphabet: &Alphabet, colors: usize) -> Result<impl Iterator<Item = Dfa>> {
    let structures = brute_force_structures(alphabet.len(), colors)?;
    let alphabet = alphabet.clone();
    Ok((0..structures.len()).flat_map(move |i| {
        let table = structures[i].clone();
        let alphabet = alphabet.clone();
        (0u32..1 << colors).map(move |mask| {
            let accepting = (0..colors).map(|q| mask >> q & 1 == 1).collect();
            Dfa::new(alphabet.clone(), colors, table.clone(), accepting).expect("enumerated tables are well formed")
        })
    }))
}

/// Fewest labeled APTA nodes any acceptance set misclassifies on this
/// transition table: each state takes the majority label of the nodes
/// ending in it.
pub fn min_flips(apta: &Apta, table: &[usize], symbols: usize) -> usize {
    let colors = table.len() / symbols;
    let mut state = vec![0usize; apta.len()];
    let mut counts = vec![[0usize; 2]; colors];
    for v in 0..apta.len() {
        let node = apta.node(v);
        if let (Some(p), Some(s)) = (node.parent, node.symbol) {
            state[v] = table[state[p] * symbols + s];
        }
        match node.label {
            Some(Label::Accept) => counts[state[v]][0] += 1,
            Some(Label::Reject) => counts[state[v]][1] += 1,
            None => {}
        }
    }
    counts.iter().map(|c| c[0].min(c[1])).sum()
}

/// Whether some complete automaton with exactly `colors` reachable states
/// misclassifies at most `budget` labeled nodes.
pub fn consistent_dfa_exists(apta: &Apta, colors: usize, budget: usize, exec: Exec) -> Result<bool> {
    let structures = brute_force_structures(apta.symbols(), colors)?;
    let symbols = apta.symbols();
    Ok(exec.any_range(0..structures.len(), |i| min_flips(apta, &structures[i], symbols) <= budget))
}

/// Smallest number of states of an automaton misclassifying at most
/// `budget` labeled nodes.
pub fn min_dfa_size_oracle(apta: &Apta, budget: usize, exec: Exec) -> Result<usize> {
    for colors in 1..=ORACLE_MAX_COLORS {
        if consistent_dfa_exists(apta, colors, budget, exec)? {
            return Ok(colors);
        }
    }
    Err(Error::OracleGuard(format!(
        "no automaton with at most {ORACLE_MAX_COLORS} states fits"
    )))
}
