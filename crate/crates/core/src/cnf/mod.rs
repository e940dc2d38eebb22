//! CNF construction: literals, the named-variable registry, clause storage
//! and DIMACS text.

mod dimacs;
mod formula;
mod registry;

use std::fmt;
use std::ops::Not;

pub use dimacs::{parse_dimacs, write_dimacs, write_dimacs_with_map};
pub use formula::CnfFormula;
pub use registry::{VarKey, VariableRegistry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CnfError {
    #[error("variable {key} allocated twice")]
    DuplicateKey { key: VarKey },
    #[error("literal {lit} references a variable beyond {num_vars}")]
    VarOutOfRange { lit: i32, num_vars: u32 },
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

/// Solver variable, 1-based as in DIMACS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Var {
        assert!(index > 0 && index <= i32::MAX as u32, "variable index {index} out of range");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn neg(self) -> Lit {
        Lit(-(self.0 as i32))
    }

    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.pos()
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Signed DIMACS literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn from_dimacs(value: i32) -> Option<Lit> {
        (value != 0 && value != i32::MIN).then_some(Lit(value))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
