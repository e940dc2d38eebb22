//! Search drivers: the minimal-size loop, the find-all enumerators, the
//! backtracking baseline and the brute-force oracles used to check them.

mod backtrack;
mod find_all;
mod oracle;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::automata::{find_greedy_clique, Apta, ConsistencyGraph, Dfa, Sample, Word};
use crate::encode::{EncodeOptions, Encoding, SbpStrategy};
use crate::sat::{Backend, SolveStatus, SolverSession};
use crate::{Error, Exec, Result};

pub use backtrack::backtracking_find_all;
pub use find_all::{find_all, find_all_apta, FindAllReport, FindAllStrategy};
pub use oracle::{
    brute_force_enumerate, brute_force_structures, consistent_dfa_exists, min_dfa_size_oracle, min_flips,
    ORACLE_MAX_COLORS, ORACLE_MAX_SYMBOLS,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Exact,
    /// At most `budget` sample labels may be wrong.
    Noisy { budget: usize },
    /// Exact search for the minimal size; enumeration is driven separately.
    FindAll,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub min_size: usize,
    pub max_size: usize,
    pub strategy: SbpStrategy,
    pub backend: Backend,
    /// Per solver call; `None` waits indefinitely.
    pub time_limit: Option<Duration>,
    pub mode: Mode,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            min_size: 1,
            max_size: 30,
            strategy: SbpStrategy::Bfs,
            backend: Backend::Builtin,
            time_limit: Some(Duration::from_secs(60)),
            mode: Mode::Exact,
            exec: Exec::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_size == 0 || self.min_size > self.max_size {
            return Err(Error::Parameter(format!(
                "size range {}..={} is empty or starts at 0",
                self.min_size, self.max_size
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub dfa: Dfa,
    /// Sample strings the automaton labels differently from the sample.
    pub flipped: Vec<Word>,
    pub clauses: usize,
    pub variables: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Solution),
    NotFound,
    TimedOut,
}

impl SearchOutcome {
    pub fn dfa(&self) -> Option<&Dfa> {
        match self {
            SearchOutcome::Found(s) => Some(&s.dfa),
            _ => None,
        }
    }
}

/// Tries sizes from the lower bound upwards and returns the first automaton
/// found. In exact mode the lower bound is raised to the size of a greedy
/// clique of the consistency graph.
pub fn find_min_dfa(sample: &Sample, config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let start = Instant::now();
    let apta = Apta::build(sample);
    let (budget, cg) = match config.mode {
        Mode::Noisy { budget } => (budget, None),
        Mode::Exact | Mode::FindAll => (0, Some(ConsistencyGraph::build_with(&apta, config.exec))),
    };
    let lower = match &cg {
        Some(cg) => config.min_size.max(find_greedy_clique(cg).len()),
        None => config.min_size,
    };
    for colors in lower..=config.max_size {
        let options = EncodeOptions::with_strategy(config.strategy);
        let mut encoding = match &cg {
            Some(cg) => Encoding::exact(&apta, cg, colors, options)?,
            None => Encoding::noisy(&apta, colors, budget, options)?,
        };
        let (clauses, variables) = (encoding.num_clauses(), encoding.registry().len());
        let mut session = SolverSession::new(config.backend.clone(), encoding.take_formula());
        let result = session.solve(config.time_limit)?;
        match result.status {
            SolveStatus::Unsat => continue,
            SolveStatus::TimedOut => return Ok(SearchOutcome::TimedOut),
            SolveStatus::Sat(model) => {
                let decoded = encoding.decode(&model)?;
                // Flip variables allow a wrong label without forcing one, so
                // report what the automaton actually gets wrong.
                let flipped: Vec<Word> = sample
                    .entries()
                    .iter()
                    .filter(|(w, l)| decoded.dfa.label_of(w) != *l)
                    .map(|(w, _)| w.clone())
                    .collect();
                if flipped.len() > budget || flipped.len() > encoding.decode_flips(&model).len() {
                    return Err(Error::MalformedModel(
                        "decoded automaton misclassifies more strings than allowed".into(),
                    ));
                }
                return Ok(SearchOutcome::Found(Solution {
                    dfa: decoded.dfa,
                    flipped,
                    clauses,
                    variables,
                    elapsed: start.elapsed(),
                }));
            }
        }
    }
    Ok(SearchOutcome::NotFound)
}

/// Largest instance [`project_models_to_dfas`] accepts.
pub const PROJECTION_MAX_COLORS: usize = 4;
pub const PROJECTION_MAX_NODES: usize = 16;

/// Every distinct automaton obtainable from a model of the exact encoding,
/// by enumerating all assignments to the transition variables and the root
/// colour. Acceptance is normalised to "some positive string ends here".
pub fn project_models_to_dfas(apta: &Apta, colors: usize, options: EncodeOptions) -> Result<Vec<Dfa>> {
    if colors > PROJECTION_MAX_COLORS || apta.len() > PROJECTION_MAX_NODES {
        return Err(Error::OracleGuard(format!(
            "model projection is limited to {PROJECTION_MAX_COLORS} colours and {PROJECTION_MAX_NODES} nodes"
        )));
    }
    let cg = ConsistencyGraph::build(apta);
    let encoding = match Encoding::exact(apta, &cg, colors, options) {
        Err(Error::InfeasibleBudget { .. }) => return Ok(Vec::new()),
        other => other?,
    };
    let mut projection = Vec::new();
    for s in 0..encoding.symbols() {
        for i in 0..colors {
            for j in 0..colors {
                projection.push(encoding.y(s, i, j));
            }
        }
    }
    projection.extend((0..colors).map(|i| encoding.x(Apta::ROOT, i)));
    let mut session = SolverSession::new(Backend::Builtin, encoding.formula().clone());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    while let SolveStatus::Sat(model) = session.solve(None)?.status {
        let dfa = normalize_accepting(&encoding.decode(&model)?.dfa, apta);
        if seen.insert(dfa.clone()) {
            out.push(dfa);
        }
        let block: Vec<_> = projection.iter().map(|&v| v.lit(!model.value(v))).collect();
        session.add_clause(&block)?;
    }
    Ok(out)
}

/// Same transitions; a state accepts iff some accepting APTA node reaches it.
pub fn normalize_accepting(dfa: &Dfa, apta: &Apta) -> Dfa {
    let mut accepting = vec![false; dfa.size()];
    let mut state = vec![0; apta.len()];
    for v in 1..apta.len() {
        let node = apta.node(v);
        state[v] = dfa.next(state[node.parent.unwrap()], node.symbol.unwrap());
    }
    for v in apta.accepting() {
        accepting[state[v]] = true;
    }
    Dfa::new(dfa.alphabet().clone(), dfa.size(), dfa.table().to_vec(), accepting)
        .expect("same shape as the input automaton")
}
