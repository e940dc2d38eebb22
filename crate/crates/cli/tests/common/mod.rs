#![allow(dead_code)]

use std::collections::HashMap;

use dfaid::encode::{Row, SbpStrategy};
use dfaid::{Alphabet, Apta, ConsistencyGraph, Label, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fig_sample() -> Sample {
    Sample::from_strs(&["ab", "b", "ba", "bbb"], &["abbb", "baba"]).unwrap()
}

/// Random labeled strings over `symbols` symbols whose APTA has at most
/// `max_nodes` nodes.
pub fn random_sample(rng: &mut ChaCha8Rng, symbols: usize, max_nodes: usize) -> Sample {
    loop {
        let count = rng.random_range(1..=7);
        let mut entries: Vec<(Vec<usize>, Label)> = Vec::new();
        for _ in 0..count {
            let len = rng.random_range(0..=5);
            let word: Vec<usize> = (0..len).map(|_| rng.random_range(0..symbols)).collect();
            let label = if rng.random_bool(0.5) { Label::Accept } else { Label::Reject };
            if !entries.iter().any(|(w, _)| *w == word) {
                entries.push((word, label));
            }
        }
        let sample = Sample::new(Alphabet::numeric(symbols), entries).unwrap();
        if Apta::build(&sample).len() <= max_nodes {
            return sample;
        }
    }
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Expected clause count per family for an encoding of `apta` at `colors`.
pub struct Expected {
    pub rows: HashMap<Row, usize>,
}

impl Expected {
    pub fn exact(apta: &Apta, cg: &ConsistencyGraph, colors: usize, strategy: SbpStrategy, clique: usize) -> Self {
        let mut e = Expected::base(apta, colors);
        e.rows.insert(Row::ConflictingColors, cg.edge_count() * colors);
        match strategy {
            SbpStrategy::None => {}
            SbpStrategy::Clique => {
                e.rows.insert(Row::CliqueColor, clique);
            }
            _ => e.add_sbp(strategy, colors, apta.symbols()),
        }
        e
    }

    pub fn noisy(apta: &Apta, colors: usize, budget: usize, strategy: SbpStrategy) -> Self {
        let mut e = Expected::base(apta, colors);
        let w = apta.labeled().len();
        let k = budget;
        if k > 0 {
            e.rows.extend([
                (Row::FlipToSlots, w),
                (Row::SlotToFlip, k * w),
                (Row::SlotToOrder, k * w),
                (Row::SlotToNextOrder, k * (w - 1)),
                (Row::OrderToSlot, k * (w - 1)),
                (Row::LastSlot, 1),
                (Row::LastNodeOnlyInLastSlot, k - 1),
                (Row::OrderMonotone, k * (w - 1)),
                (Row::OrderIncreasing, (k - 1) * (w - 1)),
            ]);
        }
        if strategy != SbpStrategy::None {
            e.add_sbp(strategy, colors, apta.symbols());
        }
        e
    }

    fn base(apta: &Apta, c: usize) -> Self {
        let (v, l) = (apta.len(), apta.symbols());
        Expected {
            rows: HashMap::from([
                (Row::AcceptingColor, apta.accepting().count() * c),
                (Row::RejectingColor, apta.rejecting().count() * c),
                (Row::AtLeastOneColor, v),
                (Row::ParentTransition, (v - 1) * c * c),
                (Row::AtMostOneTarget, l * c * binom(c, 2)),
                (Row::AtMostOneColor, v * binom(c, 2)),
                (Row::AtLeastOneTarget, l * c),
                (Row::TransitionColor, (v - 1) * c * c),
            ]),
        }
    }

    fn add_sbp(&mut self, strategy: SbpStrategy, c: usize, l: usize) {
        let pairs = binom(c, 2);
        let symbol_pairs = if l == 2 { 1 } else { binom(l, 2) };
        self.rows.extend([
            (Row::RootColor, 1),
            (Row::LinkToTransitions, pairs),
            (Row::TransitionToLink, l * pairs),
            (Row::ParentToLink, pairs),
            (Row::ParentExists, c - 1),
        ]);
        if l >= 3 {
            self.rows.extend([
                (Row::MinToTransition, l * pairs),
                (Row::MinExcludesSmaller, binom(l, 2) * pairs),
                (Row::TransitionToMin, l * pairs),
            ]);
        }
        let siblings = if l >= 2 { symbol_pairs } else { 0 };
        match strategy {
            SbpStrategy::Dfs => self.rows.extend([
                (Row::DfsParentIsLast, binom(c, 3)),
                (Row::DfsParentDefinition, pairs),
                (Row::DfsParentOrder, binom(c, 4)),
                (Row::DfsSiblingOrder, binom(c, 3) * siblings),
                (Row::DfsEarlierSymbolFirst, binom(c, 3) * siblings),
            ]),
            SbpStrategy::Bfs => self.rows.extend([
                (Row::BfsParentIsFirst, binom(c, 3)),
                (Row::BfsParentDefinition, pairs),
                (Row::BfsParentOrder, binom(c.saturating_sub(1), 3)),
                (Row::BfsSiblingOrder, binom(c.saturating_sub(1), 2) * siblings),
            ]),
            _ => unreachable!(),
        }
    }

    /// Families whose emitted count differs from the closed form.
    pub fn mismatches(&self, count: impl Fn(Row) -> usize) -> Vec<(Row, usize, usize)> {
        Row::ALL
            .iter()
            .map(|&r| (r, self.rows.get(&r).copied().unwrap_or(0), count(r)))
            .filter(|(_, want, got)| want != got)
            .collect()
    }
}
