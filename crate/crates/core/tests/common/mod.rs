#![allow(dead_code)]

use dfaid::{Alphabet, Apta, Label, Sample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fig_sample() -> Sample {
    Sample::from_strs(&["ab", "b", "ba", "bbb"], &["abbb", "baba"]).unwrap()
}

pub fn unused_transition_sample() -> Sample {
    Sample::from_strs(&["ab", "b", "ba", "bbb"], &["abbb"]).unwrap()
}

/// Random labeled strings over `symbols` symbols whose APTA has at most
/// `max_nodes` nodes.
pub fn random_sample(rng: &mut ChaCha8Rng, symbols: usize, max_nodes: usize) -> Sample {
    loop {
        let count = rng.random_range(0..=6);
        let mut entries = Vec::new();
        for _ in 0..count {
            let len = rng.random_range(0..=4);
            let word: Vec<usize> = (0..len).map(|_| rng.random_range(0..symbols)).collect();
            let label = if rng.random_bool(0.5) { Label::Accept } else { Label::Reject };
            if !entries.iter().any(|(w, _): &(Vec<usize>, Label)| *w == word) {
                entries.push((word, label));
            }
        }
        let sample = Sample::new(Alphabet::numeric(symbols), entries).unwrap();
        if Apta::build(&sample).len() <= max_nodes {
            return sample;
        }
    }
}

/// Whether merging `v` and `w`, then repeatedly merging the children of
/// merged nodes on equal symbols, puts two different labels in one block.
/// Quadratic fixpoint over explicit block ids.
pub fn naive_merge_conflict(apta: &Apta, v: usize, w: usize) -> bool {
    let n = apta.len();
    let mut block: Vec<usize> = (0..n).collect();
    let relabel = |block: &mut Vec<usize>, a: usize, b: usize| {
        let (from, to) = (block[a].max(block[b]), block[a].min(block[b]));
        for x in block.iter_mut() {
            if *x == from {
                *x = to;
            }
        }
    };
    relabel(&mut block, v, w);
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if a == b || block[a] != block[b] {
                    continue;
                }
                for s in 0..apta.symbols() {
                    if let (Some(ca), Some(cb)) = (apta.child(a, s), apta.child(b, s)) {
                        if block[ca] != block[cb] {
                            relabel(&mut block, ca, cb);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n).any(|a| {
        (0..n).any(|b| {
            block[a] == block[b]
                && matches!(
                    (apta.label(a), apta.label(b)),
                    (Some(Label::Accept), Some(Label::Reject))
                )
        })
    })
}

/// Largest clique by exhaustive subset search.
pub fn max_clique_size(n: usize, edge: impl Fn(usize, usize) -> bool) -> usize {
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|a| (a + 1..n).all(|b| mask >> a & 1 == 0 || mask >> b & 1 == 0 || edge(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Every complete transition table with `colors` states over `symbols`.
pub fn all_tables(symbols: usize, colors: usize) -> impl Iterator<Item = Vec<usize>> {
    let cells = symbols * colors;
    (0..colors.pow(cells as u32)).map(move |mut code| {
        (0..cells)
            .map(|_| {
                let t = code % colors;
                code /= colors;
                t
            })
            .collect()
    })
}

/// `n choose k`.
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
