use super::{Encoding, Row};
use crate::automata::Apta;
use crate::cnf::VarKey;

impl Encoding {
    /// Makes every transition that no APTA edge uses a self-loop, through
    /// `u(l,i)`: some node of colour `i` has an outgoing `l`-edge.
    pub fn add_loop_forcing(&mut self, apta: &Apta) {
        if self.u0.is_some() {
            return;
        }
        let (c, l) = (self.colors, self.symbols());
        self.u0 = Some(self.next_var());
        for symbol in 0..l {
            for color in 0..c {
                self.alloc(VarKey::Used { symbol, color });
            }
        }
        let mut clause = Vec::new();
        for s in 0..l {
            let sources: Vec<usize> = apta.nodes_with_edge(s).collect();
            for i in 0..c {
                clause.clear();
                clause.push(self.u(s, i).neg());
                clause.extend(sources.iter().map(|&v| self.x(v, i).pos()));
                self.emit(Row::UsedToColors, &clause);
                for &v in &sources {
                    self.emit(Row::ColorToUsed, &[self.x(v, i).neg(), self.u(s, i).pos()]);
                }
                self.emit(Row::UnusedLoop, &[self.u(s, i).pos(), self.y(s, i, i).pos()]);
            }
        }
        self.options.loop_forcing = true;
    }
}
