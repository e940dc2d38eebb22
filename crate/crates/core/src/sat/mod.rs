//! SAT backends: the built-in CDCL solver, an external DIMACS solver driver
//! and an incremental session over either.

pub mod cdcl;
mod external;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::cnf::{CnfFormula, Lit, Var};

pub use external::parse_external_output;

#[derive(Debug, thiserror::Error)]
pub enum SatError {
    #[error("model violates clause {clause}")]
    InvalidModel { clause: usize },
    #[error("external solver `{command}`: {message}")]
    External { command: String, message: String },
    #[error("solver output: {0}")]
    Output(String),
    #[error("unknown backend `{0}` (expected `builtin` or `external:<command>`)")]
    UnknownBackend(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Truth assignment over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model(Vec<bool>);

impl Model {
    /// `values[0]` is ignored.
    pub fn from_values(values: Vec<bool>) -> Model {
        Model(values)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn value(&self, var: Var) -> bool {
        self.0.get(var.index() as usize).copied().unwrap_or(false)
    }

    pub fn lit(&self, lit: Lit) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Sat(Model),
    Unsat,
    TimedOut,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn model(&self) -> Option<&Model> {
        match &self.status {
            SolveStatus::Sat(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self.status, SolveStatus::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.status, SolveStatus::Unsat)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Builtin,
    /// Run as `<command...> <dimacs-path>`; the command is split on whitespace.
    External { command: String },
}

impl FromStr for Backend {
    type Err = SatError;

    fn from_str(s: &str) -> Result<Self, SatError> {
        match s {
            "builtin" => Ok(Backend::Builtin),
            _ => match s.strip_prefix("external:") {
                Some(cmd) if !cmd.trim().is_empty() => Ok(Backend::External {
                    command: cmd.trim().to_string(),
                }),
                _ => Err(SatError::UnknownBackend(s.to_string())),
            },
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Builtin => f.write_str("builtin"),
            Backend::External { command } => write!(f, "external:{command}"),
        }
    }
}

/// A growing formula plus the solver state that goes with it. Clauses are
/// only ever added. The built-in backend keeps its learnt clauses between
/// calls; the external backend re-solves the whole formula every time.
pub struct SolverSession {
    backend: Backend,
    formula: CnfFormula,
    builtin: Option<cdcl::Solver>,
}

impl SolverSession {
    pub fn new(backend: Backend, formula: CnfFormula) -> SolverSession {
        let builtin = matches!(backend, Backend::Builtin).then(|| cdcl::Solver::from_formula(&formula));
        SolverSession {
            backend,
            formula,
            builtin,
        }
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn reserve_vars(&mut self, num_vars: u32) {
        self.formula.reserve_vars(num_vars);
        if let Some(s) = &mut self.builtin {
            s.reserve_vars(num_vars);
        }
    }

    pub fn add_clause(&mut self, clause: &[Lit]) -> Result<(), crate::cnf::CnfError> {
        self.formula.add_clause(clause)?;
        if let Some(s) = &mut self.builtin {
            s.add_clause(clause);
        }
        Ok(())
    }

    pub fn add_clauses<'a>(
        &mut self,
        clauses: impl IntoIterator<Item = &'a [Lit]>,
    ) -> Result<(), crate::cnf::CnfError> {
        clauses.into_iter().try_for_each(|c| self.add_clause(c))
    }

    /// Decides the accumulated formula; `None` means no time limit.
    pub fn solve(&mut self, timeout: Option<Duration>) -> Result<SolveResult, SatError> {
        let start = Instant::now();
        let status = match &mut self.builtin {
            Some(solver) => match solver.solve(timeout.map(|t| start + t)) {
                cdcl::Outcome::Sat => SolveStatus::Sat(Model::from_values(solver.model())),
                cdcl::Outcome::Unsat => SolveStatus::Unsat,
                cdcl::Outcome::Unknown => SolveStatus::TimedOut,
            },
            None => {
                let Backend::External { command } = &self.backend else {
                    unreachable!("builtin session without solver")
                };
                external::run(command, &self.formula, timeout)?
            }
        };
        if let SolveStatus::Sat(model) = &status {
            let mut values = model.values().to_vec();
            values.resize(self.formula.num_vars() as usize + 1, false);
            if let Some(clause) = self.formula.first_falsified(&values) {
                return Err(SatError::InvalidModel { clause });
            }
        }
        Ok(SolveResult {
            status,
            elapsed: start.elapsed(),
        })
    }
}

/// One-shot convenience around [`SolverSession`].
pub fn solve_formula(
    backend: &Backend,
    formula: &CnfFormula,
    timeout: Option<Duration>,
) -> Result<SolveResult, SatError> {
    SolverSession::new(backend.clone(), formula.clone()).solve(timeout)
}
