use super::{CnfError, Lit};

/// Clause store with flat literal storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    lits: Vec<Lit>,
    starts: Vec<u32>,
    has_empty: bool,
}

impl Default for CnfFormula {
    fn default() -> Self {
        Self::new()
    }
}

impl CnfFormula {
    pub fn new() -> Self {
        CnfFormula {
            num_vars: 0,
            lits: Vec::new(),
            starts: vec![0],
            has_empty: false,
        }
    }

    pub fn with_vars(num_vars: u32) -> Self {
        let mut f = Self::new();
        f.num_vars = num_vars;
        f
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Grows the variable range; never shrinks it.
    pub fn reserve_vars(&mut self, num_vars: u32) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    pub fn num_clauses(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn num_literals(&self) -> usize {
        self.lits.len()
    }

    /// True once an empty clause has been added.
    pub fn is_trivially_unsat(&self) -> bool {
        self.has_empty
    }

    pub fn add_clause(&mut self, clause: &[Lit]) -> Result<(), CnfError> {
        if let Some(&lit) = clause.iter().find(|l| l.var().index() > self.num_vars) {
            return Err(CnfError::VarOutOfRange {
                lit: lit.to_dimacs(),
                num_vars: self.num_vars,
            });
        }
        self.has_empty |= clause.is_empty();
        self.lits.extend_from_slice(clause);
        self.starts.push(self.lits.len() as u32);
        Ok(())
    }

    pub fn clause(&self, i: usize) -> &[Lit] {
        &self.lits[self.starts[i] as usize..self.starts[i + 1] as usize]
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &[Lit]> + '_ {
        self.starts
            .windows(2)
            .map(|w| &self.lits[w[0] as usize..w[1] as usize])
    }

    pub fn extend(&mut self, other: &CnfFormula) -> Result<(), CnfError> {
        self.reserve_vars(other.num_vars);
        for c in other.clauses() {
            self.add_clause(c)?;
        }
        Ok(())
    }

    /// Evaluates the formula; `model[v]` is the value of variable `v`
    /// (index 0 unused).
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.first_falsified(model).is_none()
    }

    pub fn first_falsified(&self, model: &[bool]) -> Option<usize> {
        self.clauses().position(|c| {
            !c.iter().any(|l| {
                model
                    .get(l.var().index() as usize)
                    .is_some_and(|&v| v == l.is_positive())
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Var;

    #[test]
    fn counting_and_range_checks() {
        let mut f = CnfFormula::with_vars(2);
        f.add_clause(&[Var::new(1).neg(), Var::new(2).pos()]).unwrap();
        assert_eq!(f.num_clauses(), 1);
        for _ in 0..9 {
            f.add_clause(&[Var::new(1).pos()]).unwrap();
        }
        assert_eq!(f.num_clauses(), 10);
        assert!(matches!(
            f.add_clause(&[Var::new(3).pos()]),
            Err(CnfError::VarOutOfRange { lit: 3, num_vars: 2 })
        ));
        assert!(!f.is_trivially_unsat());
        f.add_clause(&[]).unwrap();
        assert!(f.is_trivially_unsat());
        assert!(!f.satisfied_by(&[false, true, true]));
    }
}
