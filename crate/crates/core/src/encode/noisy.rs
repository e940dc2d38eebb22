use super::{EncodeOptions, Encoding, NoisyBlock, Row, SbpStrategy};
use crate::automata::Apta;
use crate::cnf::{Lit, VarKey};
use crate::{Error, Result};

impl Encoding {
    /// Identification allowing at most `budget` labeled nodes to carry the
    /// wrong label. Labeled nodes are taken in index order `v_1..v_W`.
    pub fn noisy(apta: &Apta, colors: usize, budget: usize, options: EncodeOptions) -> Result<Encoding> {
        if options.strategy == SbpStrategy::Clique {
            return Err(Error::Parameter(
                "clique fixing needs a consistency graph, which noisy samples do not have".into(),
            ));
        }
        let labeled = apta.labeled();
        let w = labeled.len();
        if budget > w {
            return Err(Error::BudgetTooLarge { budget, labeled: w });
        }
        let mut enc = Encoding::empty(apta.alphabet().clone(), apta.len(), colors, options)?;
        let mut position = vec![None; apta.len()];
        for (i, &v) in labeled.iter().enumerate() {
            position[v] = Some(i);
        }
        let f0 = enc.next_var();
        if budget > 0 {
            for &node in &labeled {
                enc.alloc(VarKey::Flip { node });
            }
        }
        let r0 = enc.next_var();
        for slot in 0..budget {
            for &node in &labeled {
                enc.alloc(VarKey::Slot { position: slot, node });
            }
        }
        let o0 = enc.next_var();
        for slot in 0..budget {
            for &node in &labeled {
                enc.alloc(VarKey::Order { position: slot, node });
            }
        }
        enc.noisy = Some(NoisyBlock {
            budget,
            labeled,
            position,
            f0,
            r0,
            o0,
        });

        let flips: Vec<Option<Lit>> = (0..apta.len()).map(|v| enc.f(v).map(|f| f.pos())).collect();
        enc.emit_label_rows(apta, &flips);
        enc.emit_structure_rows(apta);
        if budget > 0 {
            enc.emit_correction_array(budget, w);
        }
        enc.finish(apta);
        Ok(enc)
    }

    fn emit_correction_array(&mut self, k: usize, w: usize) {
        let mut clause = Vec::with_capacity(k + 1);
        for j in 0..w {
            clause.clear();
            clause.push(self.f_at(j).neg());
            clause.extend((0..k).map(|i| self.r_at(i, j).pos()));
            self.emit(Row::FlipToSlots, &clause);
        }
        for i in 0..k {
            for j in 0..w {
                self.emit(Row::SlotToFlip, &[self.r_at(i, j).neg(), self.f_at(j).pos()]);
            }
        }
        for i in 0..k {
            for j in 0..w {
                self.emit(Row::SlotToOrder, &[self.r_at(i, j).neg(), self.o_at(i, j).pos()]);
            }
        }
        for i in 0..k {
            for j in 0..w - 1 {
                self.emit(Row::SlotToNextOrder, &[self.r_at(i, j).neg(), self.o_at(i, j + 1).neg()]);
            }
        }
        for i in 0..k {
            for j in 0..w - 1 {
                let lits = [self.o_at(i, j).neg(), self.o_at(i, j + 1).pos(), self.r_at(i, j).pos()];
                self.emit(Row::OrderToSlot, &lits);
            }
        }
        self.emit(Row::LastSlot, &[self.o_at(k - 1, w - 1).neg(), self.r_at(k - 1, w - 1).pos()]);
        // A slot before the last one cannot hold v_W: its successor would
        // have to hold a larger node.
        for i in 0..k - 1 {
            self.emit(Row::LastNodeOnlyInLastSlot, &[self.o_at(i, w - 1).neg()]);
        }
        for i in 0..k {
            for j in 0..w - 1 {
                self.emit(Row::OrderMonotone, &[self.o_at(i, j + 1).neg(), self.o_at(i, j).pos()]);
            }
        }
        for i in 0..k - 1 {
            for j in 0..w - 1 {
                self.emit(Row::OrderIncreasing, &[self.o_at(i, j).neg(), self.o_at(i + 1, j + 1).pos()]);
            }
        }
    }
}
