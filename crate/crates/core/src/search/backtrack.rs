use std::collections::HashSet;

use crate::automata::{Apta, Dfa, Label, Order};

/// Partial automaton grown edge by edge with an undo trail.
struct Partial<'a> {
    apta: &'a Apta,
    colors: usize,
    symbols: usize,
    state_of: Vec<Option<usize>>,
    delta: Vec<Option<usize>>,
    label: Vec<Option<Label>>,
    members: Vec<Vec<usize>>,
    used: usize,
    trail: Vec<Undo>,
}

enum Undo {
    Node(usize),
    Delta(usize),
    Label(usize),
}

impl<'a> Partial<'a> {
    fn new(apta: &'a Apta, colors: usize) -> Self {
        let symbols = apta.symbols();
        let mut p = Partial {
            apta,
            colors,
            symbols,
            state_of: vec![None; apta.len()],
            delta: vec![None; colors * symbols],
            label: vec![None; colors],
            members: vec![Vec::new(); colors],
            used: 1,
            trail: Vec::new(),
        };
        let ok = p.map_node(Apta::ROOT, 0);
        debug_assert!(ok);
        p
    }

    fn map_node(&mut self, v: usize, q: usize) -> bool {
        let mut work = vec![(v, q)];
        while let Some((v, q)) = work.pop() {
            self.state_of[v] = Some(q);
            self.members[q].push(v);
            self.trail.push(Undo::Node(v));
            if let Some(l) = self.apta.label(v) {
                match self.label[q] {
                    Some(existing) if existing != l => return false,
                    Some(_) => {}
                    None => {
                        self.label[q] = Some(l);
                        self.trail.push(Undo::Label(q));
                    }
                }
            }
            for s in 0..self.symbols {
                if let (Some(c), Some(t)) = (self.apta.child(v, s), self.delta[q * self.symbols + s]) {
                    work.push((c, t));
                }
            }
        }
        true
    }

    /// Sets `delta(q, s) = t` and maps every node this forces.
    fn define(&mut self, q: usize, s: usize, t: usize) -> bool {
        self.delta[q * self.symbols + s] = Some(t);
        self.trail.push(Undo::Delta(q * self.symbols + s));
        let sources: Vec<usize> = self.members[q].iter().filter_map(|&v| self.apta.child(v, s)).collect();
        sources.into_iter().all(|c| self.map_node(c, t))
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Node(v) => {
                    let q = self.state_of[v].take().unwrap();
                    self.members[q].pop();
                }
                Undo::Delta(i) => self.delta[i] = None,
                Undo::Label(q) => self.label[q] = None,
            }
        }
    }

    /// Lowest unmapped node whose parent is mapped.
    fn frontier(&self) -> Option<usize> {
        (1..self.apta.len()).find(|&v| {
            self.state_of[v].is_none() && self.state_of[self.apta.node(v).parent.unwrap()].is_some()
        })
    }

    fn complete(&self) -> Option<Dfa> {
        if self.used < self.colors {
            return None;
        }
        let delta = (0..self.colors * self.symbols)
            .map(|i| self.delta[i].unwrap_or(i / self.symbols))
            .collect();
        let accepting = self.label.iter().map(|l| *l == Some(Label::Accept)).collect();
        Some(Dfa::new(self.apta.alphabet().clone(), self.colors, delta, accepting).expect("well-formed table"))
    }

    fn search(&mut self, found: &mut HashSet<Dfa>) {
        let Some(v) = self.frontier() else {
            if let Some(dfa) = self.complete() {
                found.insert(dfa.canonicalize(Order::Bfs).expect("every state holds an APTA node"));
            }
            return;
        };
        let node = self.apta.node(v);
        let q = self.state_of[node.parent.unwrap()].unwrap();
        let s = node.symbol.unwrap();
        for t in 0..self.colors.min(self.used + 1) {
            let mark = self.trail.len();
            let grew = t == self.used;
            if grew {
                self.used += 1;
            }
            if self.define(q, s, t) {
                self.search(found);
            }
            self.undo_to(mark);
            if grew {
                self.used -= 1;
            }
        }
    }
}

/// All automata with exactly `colors` states consistent with the APTA,
/// built by extending a partial automaton one APTA edge at a time (lowest
/// node first, destinations capped at one fresh state) and completing
/// untouched transitions with self-loops. Returned in BFS canonical form,
/// without duplicates, sorted.
pub fn backtracking_find_all(apta: &Apta, colors: usize) -> Vec<Dfa> {
    if colors == 0 {
        return Vec::new();
    }
    let mut found = HashSet::new();
    Partial::new(apta, colors).search(&mut found);
    let mut out: Vec<Dfa> = found.into_iter().collect();
    out.sort_by(|a, b| (a.table(), a.accepting()).cmp(&(b.table(), b.accepting())));
    out
}
