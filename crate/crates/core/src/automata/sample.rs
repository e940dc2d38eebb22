use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A string over an alphabet, as symbol indices.
pub type Word = Vec<usize>;

/// Ordered set of symbols. The order is the "alphabetical" order used by
/// the symmetry-breaking clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alphabet(Vec<String>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = Vec::new();
        for s in symbols {
            let s = s.into();
            if seen.contains(&s) {
                return Err(Error::DuplicateSymbol { symbol: s });
            }
            seen.push(s);
        }
        Ok(Alphabet(seen))
    }

    /// Symbols `0..n` rendered as decimal numbers.
    pub fn numeric(n: usize) -> Self {
        Alphabet((0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.0.iter().position(|s| s == symbol)
    }

    pub fn encode<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word> {
        symbols
            .iter()
            .map(|s| {
                self.index_of(s.as_ref()).ok_or_else(|| Error::UnknownSymbol {
                    symbol: s.as_ref().to_string(),
                })
            })
            .collect()
    }

    /// Renders a word; single-character alphabets are concatenated, longer
    /// symbols are space separated.
    pub fn render(&self, word: &[usize]) -> String {
        if self.0.iter().all(|s| s.chars().count() == 1) {
            word.iter().map(|&i| self.0[i].as_str()).collect()
        } else {
            word.iter()
                .map(|&i| self.0[i].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Accept,
    Reject,
}

impl Label {
    pub fn from_accepting(accepting: bool) -> Self {
        if accepting {
            Label::Accept
        } else {
            Label::Reject
        }
    }

    pub fn is_accept(self) -> bool {
        self == Label::Accept
    }

    pub fn flipped(self) -> Self {
        match self {
            Label::Accept => Label::Reject,
            Label::Reject => Label::Accept,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_accept() { "+" } else { "-" })
    }
}

/// Labeled strings over an alphabet.
///
/// Entries keep their first-seen order and are distinct; a string carrying
/// both labels is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    alphabet: Alphabet,
    entries: Vec<(Word, Label)>,
}

impl Sample {
    pub fn new<I>(alphabet: Alphabet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Label)>,
    {
        let mut seen: HashMap<Word, Label> = HashMap::new();
        let mut kept = Vec::new();
        for (word, label) in entries {
            if let Some(&sym) = word.iter().find(|&&s| s >= alphabet.len()) {
                return Err(Error::UnknownSymbol {
                    symbol: format!("#{sym}"),
                });
            }
            match seen.get(&word) {
                Some(&l) if l == label => continue,
                Some(_) => {
                    return Err(Error::ConflictingLabels {
                        word: alphabet.render(&word),
                    })
                }
                None => {
                    seen.insert(word.clone(), label);
                    kept.push((word, label));
                }
            }
        }
        Ok(Sample {
            alphabet,
            entries: kept,
        })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Sample {
            alphabet,
            entries: Vec::new(),
        }
    }

    /// Builds a sample from character strings; each `char` is a symbol and
    /// the alphabet is ordered by first appearance (positives first).
    pub fn from_strs(positives: &[&str], negatives: &[&str]) -> Result<Self> {
        let mut symbols: Vec<String> = Vec::new();
        for s in positives.iter().chain(negatives) {
            for c in s.chars() {
                let c = c.to_string();
                if !symbols.contains(&c) {
                    symbols.push(c);
                }
            }
        }
        let alphabet = Alphabet(symbols);
        Self::from_strs_with(alphabet, positives, negatives)
    }

    pub fn from_strs_with(alphabet: Alphabet, positives: &[&str], negatives: &[&str]) -> Result<Self> {
        let encode = |s: &str| -> Result<Word> {
            let chars: Vec<String> = s.chars().map(String::from).collect();
            alphabet.encode(&chars)
        };
        let mut entries = Vec::new();
        for s in positives {
            entries.push((encode(s)?, Label::Accept));
        }
        for s in negatives {
            entries.push((encode(s)?, Label::Reject));
        }
        Sample::new(alphabet, entries)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn entries(&self) -> &[(Word, Label)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn positives(&self) -> impl Iterator<Item = &Word> {
        self.entries
            .iter()
            .filter(|(_, l)| l.is_accept())
            .map(|(w, _)| w)
    }

    pub fn negatives(&self) -> impl Iterator<Item = &Word> {
        self.entries
            .iter()
            .filter(|(_, l)| !l.is_accept())
            .map(|(w, _)| w)
    }
}
