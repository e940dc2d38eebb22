use std::time::{Duration, Instant};

use super::normalize_accepting;
use crate::automata::{Apta, ConsistencyGraph, Dfa, Sample};
use crate::cnf::Lit;
use crate::encode::{EncodeOptions, Encoding, SbpStrategy};
use crate::sat::{Backend, SolveStatus, SolverSession};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FindAllStrategy {
    /// Fresh solver per model, fed every blocking clause so far.
    Restart,
    /// One live solver receiving blocking clauses as models are found.
    Incremental,
}

impl std::str::FromStr for FindAllStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "restart" => Ok(FindAllStrategy::Restart),
            "incremental" => Ok(FindAllStrategy::Incremental),
            _ => Err(Error::Parameter(format!("unknown find-all strategy `{s}`"))),
        }
    }
}

impl std::fmt::Display for FindAllStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FindAllStrategy::Restart => "restart",
            FindAllStrategy::Incremental => "incremental",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FindAllReport {
    pub dfas: Vec<Dfa>,
    /// Satisfying assignments visited; equals `dfas.len()`.
    pub models: usize,
    pub clauses: usize,
    pub elapsed: Duration,
}

/// Every automaton with `colors` states consistent with the sample, with
/// unused transitions forced to be self-loops and acceptance normalised.
/// A timeout yields [`Error::PartialEnumeration`] with what was found.
pub fn find_all(
    sample: &Sample,
    colors: usize,
    strategy: FindAllStrategy,
    sbp: SbpStrategy,
    backend: &Backend,
    time_limit: Option<Duration>,
) -> Result<FindAllReport> {
    let apta = Apta::build(sample);
    let cg = ConsistencyGraph::build(&apta);
    find_all_apta(&apta, &cg, colors, strategy, sbp, backend, time_limit)
}

pub fn find_all_apta(
    apta: &Apta,
    cg: &ConsistencyGraph,
    colors: usize,
    strategy: FindAllStrategy,
    sbp: SbpStrategy,
    backend: &Backend,
    time_limit: Option<Duration>,
) -> Result<FindAllReport> {
    let start = Instant::now();
    let deadline = time_limit.map(|t| start + t);
    let options = EncodeOptions {
        strategy: sbp,
        loop_forcing: true,
        ..EncodeOptions::default()
    };
    let mut encoding = match Encoding::exact(apta, cg, colors, options) {
        Err(Error::InfeasibleBudget { .. }) => {
            return Ok(FindAllReport {
                dfas: Vec::new(),
                models: 0,
                clauses: 0,
                elapsed: start.elapsed(),
            })
        }
        other => other?,
    };
    let base = encoding.take_formula();
    let clauses = base.num_clauses();
    let mut blocks: Vec<Vec<Lit>> = Vec::new();
    let mut dfas = Vec::new();
    let mut live = (strategy == FindAllStrategy::Incremental).then(|| SolverSession::new(backend.clone(), base.clone()));
    loop {
        let remaining = match deadline {
            Some(d) => match d.checked_duration_since(Instant::now()) {
                Some(r) => Some(r),
                None => return Err(Error::PartialEnumeration { found: dfas }),
            },
            None => None,
        };
        let result = match &mut live {
            Some(session) => session.solve(remaining)?,
            None => {
                let mut session = SolverSession::new(backend.clone(), base.clone());
                session.add_clauses(blocks.iter().map(Vec::as_slice))?;
                session.solve(remaining)?
            }
        };
        let model = match result.status {
            SolveStatus::Sat(model) => model,
            SolveStatus::Unsat => break,
            SolveStatus::TimedOut => return Err(Error::PartialEnumeration { found: dfas }),
        };
        let decoded = encoding.decode(&model)?;
        let block = encoding.blocking_clause(&decoded);
        dfas.push(normalize_accepting(&decoded.dfa, apta));
        match &mut live {
            Some(session) => session.add_clause(&block)?,
            None => blocks.push(block),
        }
    }
    Ok(FindAllReport {
        models: dfas.len(),
        dfas,
        clauses,
        elapsed: start.elapsed(),
    })
}
