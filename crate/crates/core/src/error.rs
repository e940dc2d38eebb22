use std::path::PathBuf;

use crate::automata::Dfa;
use crate::cnf::CnfError;
use crate::sat::SatError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("string {word:?} is labeled both accepting and rejecting")]
    ConflictingLabels { word: String },

    #[error("symbol {symbol:?} is not in the alphabet")]
    UnknownSymbol { symbol: String },

    #[error("duplicate symbol {symbol:?} in alphabet")]
    DuplicateSymbol { symbol: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("state budget {colors} is smaller than the fixed clique of size {clique}")]
    InfeasibleBudget { colors: usize, clique: usize },

    #[error("flip budget {budget} exceeds the {labeled} labeled strings")]
    BudgetTooLarge { budget: usize, labeled: usize },

    #[error("state {state} is unreachable from the start state")]
    Unreachable { state: usize },

    #[error("malformed model: {0}")]
    MalformedModel(String),

    #[error("instance outside the exhaustive oracle range: {0}")]
    OracleGuard(String),

    #[error("gave up after {attempts} attempts to draw a minimal {states}-state automaton")]
    GenerationFailed { attempts: usize, states: usize },

    #[error("enumeration timed out after {} automata", found.len())]
    PartialEnumeration { found: Vec<Dfa> },

    #[error(transparent)]
    Cnf(#[from] CnfError),

    #[error(transparent)]
    Sat(#[from] SatError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
