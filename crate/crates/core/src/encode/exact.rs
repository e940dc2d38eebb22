use super::{EncodeOptions, Encoding, Row, SbpStrategy};
use crate::automata::{find_greedy_clique, Apta, ConsistencyGraph, Label};
use crate::cnf::Lit;
use crate::{Error, Result};

impl Encoding {
    /// Exact identification at `colors` states: every labeled string must be
    /// classified correctly.
    pub fn exact(apta: &Apta, cg: &ConsistencyGraph, colors: usize, options: EncodeOptions) -> Result<Encoding> {
        let mut enc = Encoding::empty(apta.alphabet().clone(), apta.len(), colors, options)?;
        if options.strategy == SbpStrategy::Clique {
            let clique = find_greedy_clique(cg);
            if clique.len() > colors {
                return Err(Error::InfeasibleBudget {
                    colors,
                    clique: clique.len(),
                });
            }
            enc.clique = clique;
        }
        enc.emit_label_rows(apta, &[]);
        enc.emit_structure_rows(apta);
        for &(v, w) in cg.edges() {
            for i in 0..colors {
                enc.emit(Row::ConflictingColors, &[enc.x(v, i).neg(), enc.x(w, i).neg()]);
            }
        }
        for k in 0..enc.clique.len() {
            let unit = enc.x(enc.clique[k], k).pos();
            enc.emit(Row::CliqueColor, &[unit]);
        }
        enc.finish(apta);
        Ok(enc)
    }

    /// Label rows; `flip[v]`, when given, is appended to node `v`'s clauses.
    pub(super) fn emit_label_rows(&mut self, apta: &Apta, flip: &[Option<Lit>]) {
        for v in 0..apta.len() {
            let Some(label) = apta.label(v) else { continue };
            let extra = flip.get(v).copied().flatten();
            for i in 0..self.colors {
                let (row, z) = match label {
                    Label::Accept => (Row::AcceptingColor, self.z(i).pos()),
                    Label::Reject => (Row::RejectingColor, self.z(i).neg()),
                };
                match extra {
                    Some(f) => self.emit(row, &[self.x(v, i).neg(), z, f]),
                    None => self.emit(row, &[self.x(v, i).neg(), z]),
                }
            }
        }
    }

    /// The label-independent families shared by the exact and noisy
    /// encodings.
    pub(super) fn emit_structure_rows(&mut self, apta: &Apta) {
        let (c, l) = (self.colors, self.symbols());
        let redundant = self.options.redundant;
        let mut clause = Vec::with_capacity(c.max(3));
        for v in 0..apta.len() {
            clause.clear();
            clause.extend((0..c).map(|i| self.x(v, i).pos()));
            self.emit(Row::AtLeastOneColor, &clause);
        }
        for v in 1..apta.len() {
            let node = apta.node(v);
            let (p, s) = (node.parent.unwrap(), node.symbol.unwrap());
            for i in 0..c {
                for j in 0..c {
                    let lits = [self.y(s, i, j).pos(), self.x(p, i).neg(), self.x(v, j).neg()];
                    self.emit(Row::ParentTransition, &lits);
                }
            }
        }
        for s in 0..l {
            for i in 0..c {
                for j in 0..c {
                    for k in j + 1..c {
                        self.emit(Row::AtMostOneTarget, &[self.y(s, i, j).neg(), self.y(s, i, k).neg()]);
                    }
                }
            }
        }
        if redundant {
            for v in 0..apta.len() {
                for i in 0..c {
                    for j in i + 1..c {
                        self.emit(Row::AtMostOneColor, &[self.x(v, i).neg(), self.x(v, j).neg()]);
                    }
                }
            }
            for s in 0..l {
                for i in 0..c {
                    clause.clear();
                    clause.extend((0..c).map(|j| self.y(s, i, j).pos()));
                    self.emit(Row::AtLeastOneTarget, &clause);
                }
            }
            for v in 1..apta.len() {
                let node = apta.node(v);
                let (p, s) = (node.parent.unwrap(), node.symbol.unwrap());
                for i in 0..c {
                    for j in 0..c {
                        let lits = [self.y(s, i, j).neg(), self.x(p, i).neg(), self.x(v, j).pos()];
                        self.emit(Row::TransitionColor, &lits);
                    }
                }
            }
        }
    }

    /// Strategy-dependent tail shared by both encodings.
    pub(super) fn finish(&mut self, apta: &Apta) {
        if matches!(self.options.strategy, SbpStrategy::Dfs | SbpStrategy::Bfs) {
            let root = self.x(Apta::ROOT, 0).pos();
            self.emit(Row::RootColor, &[root]);
            self.emit_sbp(self.options.strategy);
        }
        if self.options.loop_forcing {
            self.add_loop_forcing(apta);
        }
    }
}
