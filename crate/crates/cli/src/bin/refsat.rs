//! Reference SAT solver: plain DPLL with two watched literals and
//! chronological backtracking. No learning, no restarts. Reads DIMACS from
//! the file named on the command line (or standard input) and answers in
//! SAT-competition format with exit status 10 or 20.

use std::io::{Read, Write};
use std::process::ExitCode;

use dfaid::cnf::parse_dimacs;

const UNDEF: u8 = 2;

/// Literal code `2*var + negated`, variables from 0.
fn code(dimacs: i32) -> usize {
    ((dimacs.unsigned_abs() as usize - 1) << 1) | usize::from(dimacs < 0)
}

struct Dpll {
    clauses: Vec<Vec<usize>>,
    watches: Vec<Vec<usize>>,
    value: Vec<u8>,
    trail: Vec<usize>,
    /// Trail length at each decision, the decision literal, and whether it
    /// has already been flipped.
    decisions: Vec<(usize, usize, bool)>,
    head: usize,
    order: Vec<usize>,
}

impl Dpll {
    fn lit_value(&self, lit: usize) -> u8 {
        match self.value[lit >> 1] {
            UNDEF => UNDEF,
            v => v ^ (lit & 1) as u8,
        }
    }

    fn assign(&mut self, lit: usize) {
        self.value[lit >> 1] = 1 ^ (lit & 1) as u8;
        self.trail.push(lit);
    }

    /// False on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head] ^ 1;
            self.head += 1;
            let mut watchers = std::mem::take(&mut self.watches[falsified]);
            let mut i = 0;
            let mut ok = true;
            while i < watchers.len() {
                let c = watchers[i];
                let clause = &mut self.clauses[c];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_value = match self.value[other >> 1] {
                    UNDEF => UNDEF,
                    v => v ^ (other & 1) as u8,
                };
                if other_value == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let v = self.value[l >> 1];
                    if v == UNDEF || v ^ (l & 1) as u8 == 1 {
                        clause.swap(1, k);
                        self.watches[clause[1]].push(c);
                        watchers.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if other_value == 0 {
                    ok = false;
                    break;
                }
                self.assign(other);
                i += 1;
            }
            self.watches[falsified].extend(watchers);
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for &lit in &self.trail[len..] {
            self.value[lit >> 1] = UNDEF;
        }
        self.trail.truncate(len);
        self.head = len;
    }

    fn solve(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        loop {
            let next = self.order.iter().copied().find(|&v| self.value[v] == UNDEF);
            let Some(var) = next else { return true };
            let lit = var << 1 | 1;
            self.decisions.push((self.trail.len(), lit, false));
            self.assign(lit);
            while !self.propagate() {
                loop {
                    let Some((len, lit, flipped)) = self.decisions.pop() else { return false };
                    self.undo_to(len);
                    if !flipped {
                        self.decisions.push((len, lit ^ 1, true));
                        self.assign(lit ^ 1);
                        break;
                    }
                }
            }
        }
    }
}

fn run(text: &str) -> Result<Option<Vec<bool>>, String> {
    let formula = parse_dimacs(text).map_err(|e| e.to_string())?;
    let n = formula.num_vars() as usize;
    let mut dpll = Dpll {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * n],
        value: vec![UNDEF; n],
        trail: Vec::new(),
        decisions: Vec::new(),
        head: 0,
        order: Vec::new(),
    };
    let mut occurrences = vec![0usize; n];
    let mut units = Vec::new();
    for clause in formula.clauses() {
        let mut lits: Vec<usize> = clause.iter().map(|l| code(l.to_dimacs())).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            continue;
        }
        for &l in &lits {
            occurrences[l >> 1] += 1;
        }
        match lits.len() {
            0 => return Ok(None),
            1 => units.push(lits[0]),
            _ => {
                let c = dpll.clauses.len();
                dpll.watches[lits[0]].push(c);
                dpll.watches[lits[1]].push(c);
                dpll.clauses.push(lits);
            }
        }
    }
    for lit in units {
        match dpll.lit_value(lit) {
            0 => return Ok(None),
            1 => {}
            _ => dpll.assign(lit),
        }
    }
    dpll.order = (0..n).collect();
    dpll.order.sort_by_key(|&v| std::cmp::Reverse(occurrences[v]));
    Ok(dpll.solve().then(|| dpll.value.iter().map(|&v| v == 1).collect()))
}

fn main() -> ExitCode {
    let mut text = String::new();
    let read = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map(|t| text = t),
        None => std::io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    if let Err(e) = read {
        eprintln!("refsat: {e}");
        return ExitCode::from(1);
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    match run(&text) {
        Err(e) => {
            eprintln!("refsat: {e}");
            ExitCode::from(1)
        }
        Ok(None) => {
            let _ = writeln!(out, "s UNSATISFIABLE");
            ExitCode::from(20)
        }
        Ok(Some(model)) => {
            let _ = writeln!(out, "s SATISFIABLE");
            for (row, values) in model.chunks(16).enumerate() {
                let line: Vec<String> = values
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| {
                        let var = (row * 16 + k + 1) as i64;
                        if v { var } else { -var }.to_string()
                    })
                    .collect();
                let _ = writeln!(out, "v {}", line.join(" "));
            }
            let _ = writeln!(out, "v 0");
            ExitCode::from(10)
        }
    }
}
