use std::fmt::Write as _;

use super::{CnfError, CnfFormula, Lit, VariableRegistry};

/// `p cnf <vars> <clauses>` followed by one zero-terminated line per clause.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::with_capacity(16 + formula.num_literals() * 6 + formula.num_clauses() * 2);
    write_body(&mut out, formula);
    out
}

/// Like [`write_dimacs`], preceded by `c <family> <args> -> <index>` lines.
pub fn write_dimacs_with_map(formula: &CnfFormula, registry: &VariableRegistry) -> String {
    let mut out = String::new();
    for (var, key) in registry.iter() {
        let _ = writeln!(out, "c {key} -> {var}");
    }
    write_body(&mut out, formula);
    out
}

fn write_body(out: &mut String, formula: &CnfFormula) {
    let _ = writeln!(out, "p cnf {} {}", formula.num_vars(), formula.num_clauses());
    for clause in formula.clauses() {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut formula: Option<CnfFormula> = None;
    let mut declared = 0usize;
    let mut current: Vec<Lit> = Vec::new();
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["cnf", v, c] => v.parse::<u32>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let (vars, clauses) = parsed.ok_or_else(|| CnfError::Dimacs {
                line: line_no,
                message: format!("bad problem line {line:?}"),
            })?;
            formula = Some(CnfFormula::with_vars(vars));
            declared = clauses;
            continue;
        }
        let f = formula.as_mut().ok_or_else(|| CnfError::Dimacs {
            line: line_no,
            message: "clause before problem line".into(),
        })?;
        for tok in line.split_whitespace() {
            let v: i32 = tok.parse().map_err(|_| CnfError::Dimacs {
                line: line_no,
                message: format!("bad literal {tok:?}"),
            })?;
            match Lit::from_dimacs(v) {
                None => {
                    f.add_clause(&current).map_err(|e| CnfError::Dimacs {
                        line: line_no,
                        message: e.to_string(),
                    })?;
                    current.clear();
                }
                Some(l) => current.push(l),
            }
        }
    }
    let mut f = formula.ok_or(CnfError::Dimacs {
        line: last_line,
        message: "missing problem line".into(),
    })?;
    if !current.is_empty() {
        f.add_clause(&current)?;
    }
    if f.num_clauses() != declared {
        return Err(CnfError::Dimacs {
            line: last_line,
            message: format!("problem line declares {declared} clauses, found {}", f.num_clauses()),
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{Var, VarKey};

    #[test]
    fn exact_text() {
        let mut f = CnfFormula::with_vars(2);
        f.add_clause(&[Var::new(1).pos(), Var::new(2).neg()]).unwrap();
        assert_eq!(write_dimacs(&f), "p cnf 2 1\n1 -2 0\n");
        assert_eq!(write_dimacs(&CnfFormula::new()), "p cnf 0 0\n");
        f.add_clause(&[Var::new(2).pos()]).unwrap();
        f.add_clause(&[]).unwrap();
        let text = write_dimacs(&f);
        assert!(text.starts_with("p cnf 2 3\n"));
        assert_eq!(text.lines().count(), 4);
        assert_eq!(parse_dimacs(&text).unwrap(), f);
    }

    #[test]
    fn mapping_comments() {
        let mut r = VariableRegistry::new();
        let v = r.new_var(VarKey::Color { node: 3, color: 1 }).unwrap();
        let mut f = CnfFormula::with_vars(1);
        f.add_clause(&[v.pos()]).unwrap();
        let text = write_dimacs_with_map(&f, &r);
        assert!(text.starts_with("c x 3 1 -> 1\np cnf 1 1\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), f);
    }

    #[test]
    fn malformed() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p dnf 1 1\n").is_err());
    }
}
