use super::sample::{Alphabet, Label, Sample, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AptaNode {
    pub parent: Option<usize>,
    /// Symbol on the edge from the parent.
    pub symbol: Option<usize>,
    pub label: Option<Label>,
    pub children: Vec<Option<usize>>,
    pub depth: usize,
}

/// Augmented prefix tree acceptor.
///
/// Node 0 is the root (empty prefix). Nodes are numbered in creation order,
/// so every child has a larger index than its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apta {
    alphabet: Alphabet,
    nodes: Vec<AptaNode>,
}

impl Apta {
    pub fn build(sample: &Sample) -> Apta {
        let mut apta = Self::from_words(
            sample.alphabet().len(),
            sample.entries().iter().map(|(w, l)| (w.as_slice(), *l)),
        )
        .expect("samples never carry conflicting labels");
        apta.alphabet = sample.alphabet().clone();
        apta
    }

    /// Builds the tree from labeled words in the given order. Repeated words
    /// with the same label collapse; repeated words with different labels are
    /// an error.
    pub fn from_words<'a, I>(symbols: usize, words: I) -> Result<Apta>
    where
        I: IntoIterator<Item = (&'a [usize], Label)>,
    {
        let mut apta = Apta {
            alphabet: Alphabet::numeric(symbols),
            nodes: vec![AptaNode {
                parent: None,
                symbol: None,
                label: None,
                children: vec![None; symbols],
                depth: 0,
            }],
        };
        for (word, label) in words {
            let mut node = 0;
            for &s in word {
                if s >= symbols {
                    return Err(Error::UnknownSymbol {
                        symbol: format!("#{s}"),
                    });
                }
                node = match apta.nodes[node].children[s] {
                    Some(child) => child,
                    None => {
                        let child = apta.nodes.len();
                        let depth = apta.nodes[node].depth + 1;
                        apta.nodes.push(AptaNode {
                            parent: Some(node),
                            symbol: Some(s),
                            label: None,
                            children: vec![None; symbols],
                            depth,
                        });
                        apta.nodes[node].children[s] = Some(child);
                        child
                    }
                };
            }
            match apta.nodes[node].label {
                Some(existing) if existing != label => {
                    return Err(Error::ConflictingLabels {
                        word: format!("{word:?}"),
                    })
                }
                _ => apta.nodes[node].label = Some(label),
            }
        }
        Ok(apta)
    }

    pub const ROOT: usize = 0;

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn node(&self, v: usize) -> &AptaNode {
        &self.nodes[v]
    }

    pub fn nodes(&self) -> &[AptaNode] {
        &self.nodes
    }

    pub fn label(&self, v: usize) -> Option<Label> {
        self.nodes[v].label
    }

    pub fn child(&self, v: usize, symbol: usize) -> Option<usize> {
        self.nodes[v].children[symbol]
    }

    /// Node reached by `word`, if the word is a prefix of some sample string.
    pub fn walk(&self, word: &[usize]) -> Option<usize> {
        word.iter()
            .try_fold(Self::ROOT, |v, &s| self.nodes[v].children.get(s).copied().flatten())
    }

    /// Word spelled by the path from the root to `v`.
    pub fn word_of(&self, mut v: usize) -> Word {
        let mut word = Vec::with_capacity(self.nodes[v].depth);
        while let (Some(p), Some(s)) = (self.nodes[v].parent, self.nodes[v].symbol) {
            word.push(s);
            v = p;
        }
        word.reverse();
        word
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.nodes[v].label == Some(Label::Accept))
    }

    pub fn rejecting(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.nodes[v].label == Some(Label::Reject))
    }

    /// Labeled nodes in index order.
    pub fn labeled(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.nodes[v].label.is_some())
            .collect()
    }

    /// Number of tree edges, i.e. `len() - 1`.
    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Nodes with an outgoing edge on `symbol`.
    pub fn nodes_with_edge(&self, symbol: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| self.nodes[v].children[symbol].is_some())
    }

    /// Pre/post visit times; `v` is an ancestor of `w` (or equal) iff
    /// `tin[v] <= tin[w] && tout[w] <= tout[v]`.
    pub(crate) fn euler_times(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.len();
        let mut tin = vec![0u32; n];
        let mut tout = vec![0u32; n];
        let mut clock = 0u32;
        let mut stack = vec![(Self::ROOT, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                tout[v] = clock;
                clock += 1;
                continue;
            }
            tin[v] = clock;
            clock += 1;
            stack.push((v, true));
            for c in self.nodes[v].children.iter().rev().flatten() {
                stack.push((*c, false));
            }
        }
        (tin, tout)
    }
}
