use super::{tri, Encoding, Row, SbpBlock, SbpStrategy};
use crate::cnf::{Lit, VarKey};

impl Encoding {
    /// Clauses forcing the colours to follow the BFS or DFS numbering of
    /// the automaton from colour 0, over `t(i,j)` (some transition
    /// `i -> j`), `p(j,i)` (`i` is the tree parent of `j`) and, for three
    /// or more symbols, `m(l,i,j)` (`l` is the smallest symbol on `i -> j`).
    pub(super) fn emit_sbp(&mut self, strategy: SbpStrategy) {
        let (c, l) = (self.colors, self.symbols());
        let t0 = self.next_var();
        for to in 0..c {
            for from in 0..to {
                debug_assert_eq!(self.next_var() - t0, tri(from, to) as u32);
                self.alloc(VarKey::Link { from, to });
            }
        }
        let p0 = self.next_var();
        for child in 0..c {
            for parent in 0..child {
                self.alloc(VarKey::Parent { child, parent });
            }
        }
        let m0 = (l >= 3).then(|| self.next_var());
        if m0.is_some() {
            for symbol in 0..l {
                for to in 0..c {
                    for from in 0..to {
                        self.alloc(VarKey::MinSymbol { symbol, from, to });
                    }
                }
            }
        }
        self.sbp = Some(SbpBlock { t0, p0, m0 });

        self.emit_sbp_common();
        match strategy {
            SbpStrategy::Dfs => self.emit_dfs(),
            SbpStrategy::Bfs => self.emit_bfs(),
            SbpStrategy::None | SbpStrategy::Clique => {}
        }
    }

    fn emit_sbp_common(&mut self) {
        let (c, l) = (self.colors, self.symbols());
        let mut clause: Vec<Lit> = Vec::new();
        for j in 1..c {
            for i in 0..j {
                clause.clear();
                clause.push(self.t(i, j).neg());
                clause.extend((0..l).map(|s| self.y(s, i, j).pos()));
                self.emit(Row::LinkToTransitions, &clause);
            }
        }
        for j in 1..c {
            for i in 0..j {
                for s in 0..l {
                    self.emit(Row::TransitionToLink, &[self.y(s, i, j).neg(), self.t(i, j).pos()]);
                }
            }
        }
        for j in 1..c {
            for i in 0..j {
                self.emit(Row::ParentToLink, &[self.p(j, i).neg(), self.t(i, j).pos()]);
            }
        }
        for j in 1..c {
            clause.clear();
            clause.extend((0..j).map(|i| self.p(j, i).pos()));
            self.emit(Row::ParentExists, &clause);
        }
        if l < 3 {
            return;
        }
        for j in 1..c {
            for i in 0..j {
                for s in 0..l {
                    self.emit(Row::MinToTransition, &[self.m(s, i, j).neg(), self.y(s, i, j).pos()]);
                }
                for n in 0..l {
                    for k in 0..n {
                        self.emit(Row::MinExcludesSmaller, &[self.m(n, i, j).neg(), self.y(k, i, j).neg()]);
                    }
                }
                for n in 0..l {
                    clause.clear();
                    clause.push(self.y(n, i, j).neg());
                    clause.extend((0..n).rev().map(|k| self.y(k, i, j).pos()));
                    clause.push(self.m(n, i, j).pos());
                    self.emit(Row::TransitionToMin, &clause);
                }
            }
        }
    }

    fn emit_dfs(&mut self) {
        let (c, l) = (self.colors, self.symbols());
        let mut clause: Vec<Lit> = Vec::new();
        for j in 0..c {
            for i in 0..j {
                for k in i + 1..j {
                    self.emit(Row::DfsParentIsLast, &[self.p(j, i).neg(), self.t(k, j).neg()]);
                }
            }
        }
        for j in 1..c {
            for i in 0..j {
                clause.clear();
                clause.push(self.t(i, j).neg());
                clause.extend((i + 1..j).map(|k| self.t(k, j).pos()));
                clause.push(self.p(j, i).pos());
                self.emit(Row::DfsParentDefinition, &clause);
            }
        }
        for i in 0..c {
            for k in i + 1..c {
                for j in k + 1..c {
                    for q in j + 1..c {
                        self.emit(Row::DfsParentOrder, &[self.p(j, i).neg(), self.t(k, q).neg()]);
                    }
                }
            }
        }
        if l < 2 {
            return;
        }
        for i in 0..c {
            for j in i + 1..c {
                for k in j + 1..c {
                    if l == 2 {
                        let lits = [self.p(j, i).neg(), self.p(k, i).neg(), self.y(0, i, j).pos()];
                        self.emit(Row::DfsSiblingOrder, &lits);
                        continue;
                    }
                    for n in 0..l {
                        for m in 0..n {
                            let lits = [
                                self.p(j, i).neg(),
                                self.p(k, i).neg(),
                                self.m(n, i, j).neg(),
                                self.m(m, i, k).neg(),
                            ];
                            self.emit(Row::DfsSiblingOrder, &lits);
                        }
                    }
                }
            }
        }
        // If j is reached from its parent i first by symbol n, no smaller
        // symbol of i may lead to a state numbered after j.
        for i in 0..c {
            for j in i + 1..c {
                for q in j + 1..c {
                    if l == 2 {
                        let lits = [self.p(j, i).neg(), self.y(1, i, j).neg(), self.y(0, i, q).neg()];
                        self.emit(Row::DfsEarlierSymbolFirst, &lits);
                        continue;
                    }
                    for n in 0..l {
                        for k in 0..n {
                            let lits = [self.p(j, i).neg(), self.m(n, i, j).neg(), self.y(k, i, q).neg()];
                            self.emit(Row::DfsEarlierSymbolFirst, &lits);
                        }
                    }
                }
            }
        }
    }

    fn emit_bfs(&mut self) {
        let (c, l) = (self.colors, self.symbols());
        let mut clause: Vec<Lit> = Vec::new();
        for j in 0..c {
            for i in 0..j {
                for k in 0..i {
                    self.emit(Row::BfsParentIsFirst, &[self.p(j, i).neg(), self.t(k, j).neg()]);
                }
            }
        }
        for j in 1..c {
            for i in 0..j {
                clause.clear();
                clause.push(self.t(i, j).neg());
                clause.extend((0..i).rev().map(|k| self.t(k, j).pos()));
                clause.push(self.p(j, i).pos());
                self.emit(Row::BfsParentDefinition, &clause);
            }
        }
        for j in 0..c.saturating_sub(1) {
            for i in 0..j {
                for k in 0..i {
                    self.emit(Row::BfsParentOrder, &[self.p(j, i).neg(), self.p(j + 1, k).neg()]);
                }
            }
        }
        if l < 2 {
            return;
        }
        for j in 0..c.saturating_sub(1) {
            for i in 0..j {
                if l == 2 {
                    let lits = [self.p(j, i).neg(), self.p(j + 1, i).neg(), self.y(0, i, j).pos()];
                    self.emit(Row::BfsSiblingOrder, &lits);
                    continue;
                }
                for n in 0..l {
                    for m in 0..n {
                        let lits = [
                            self.p(j, i).neg(),
                            self.p(j + 1, i).neg(),
                            self.m(n, i, j).neg(),
                            self.m(m, i, j + 1).neg(),
                        ];
                        self.emit(Row::BfsSiblingOrder, &lits);
                    }
                }
            }
        }
    }
}
