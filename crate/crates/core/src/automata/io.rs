//! Text formats: Abbadingo-style samples, DFA JSON documents and DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::dfa::Dfa;
use super::sample::{Alphabet, Label, Sample};
use crate::{Error, Result};

/// Parses the Abbadingo format: a header `<count> <alphabet size>` followed
/// by one `<label> <length> <symbols...>` line per string.
///
/// When every symbol is a decimal number below the declared alphabet size,
/// the alphabet is `0, 1, ..., size-1` in numeric order. Otherwise symbols are
/// ordered by first appearance.
pub fn parse_abbadingo(text: &str) -> Result<Sample> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let number = |s: &str, line: usize, what: &str| -> Result<usize> {
        s.parse().map_err(|_| Error::Parse {
            line,
            message: format!("expected {what}, found {s:?}"),
        })
    };
    if fields.len() != 2 {
        return Err(Error::Parse {
            line: header_line,
            message: "header must be `<count> <alphabet size>`".into(),
        });
    }
    let count = number(fields[0], header_line, "string count")?;
    let declared = number(fields[1], header_line, "alphabet size")?;

    let mut raw: Vec<(usize, Vec<&str>, Label)> = Vec::with_capacity(count);
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let label = match fields[0] {
            "1" => Label::Accept,
            "0" => Label::Reject,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("label must be 0 or 1, found {other:?}"),
                })
            }
        };
        let len = match fields.get(1) {
            Some(f) => number(f, line, "string length")?,
            None => {
                return Err(Error::Parse {
                    line,
                    message: "missing string length".into(),
                })
            }
        };
        if fields.len() != len + 2 {
            return Err(Error::Parse {
                line,
                message: format!("declared length {len} but found {} symbols", fields.len() - 2),
            });
        }
        raw.push((line, fields[2..].to_vec(), label));
    }
    if raw.len() != count {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header announces {count} strings, file has {}", raw.len()),
        });
    }

    let numeric = raw.iter().all(|(_, syms, _)| {
        syms.iter()
            .all(|s| s.parse::<usize>().is_ok_and(|v| v < declared && v.to_string() == *s))
    });
    let alphabet = if numeric {
        Alphabet::numeric(declared)
    } else {
        let mut symbols: Vec<String> = Vec::new();
        for (_, syms, _) in &raw {
            for s in syms {
                if !symbols.iter().any(|t| t == s) {
                    symbols.push(s.to_string());
                }
            }
        }
        if symbols.len() > declared {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header declares {declared} symbols, file uses {}", symbols.len()),
            });
        }
        Alphabet::new(symbols)?
    };
    let mut entries = Vec::with_capacity(raw.len());
    for (line, syms, label) in raw {
        let word = alphabet.encode(&syms).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        entries.push((word, label));
    }
    Sample::new(alphabet, entries)
}

pub fn write_abbadingo(sample: &Sample) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", sample.len(), sample.alphabet().len());
    for (word, label) in sample.entries() {
        let _ = write!(out, "{} {}", u8::from(label.is_accept()), word.len());
        for &s in word {
            let _ = write!(out, " {}", sample.alphabet().symbol(s));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: usize,
    pub label: String,
    pub to: usize,
}

/// JSON view of a DFA; states are numbered from 1 and the start state is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaDocument {
    pub size: usize,
    pub alphabet: Alphabet,
    pub start: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<TransitionDoc>,
}

impl From<&Dfa> for DfaDocument {
    fn from(dfa: &Dfa) -> Self {
        let mut transitions = Vec::with_capacity(dfa.table().len());
        for q in 0..dfa.size() {
            for s in 0..dfa.symbols() {
                transitions.push(TransitionDoc {
                    from: q + 1,
                    label: dfa.alphabet().symbol(s).to_string(),
                    to: dfa.next(q, s) + 1,
                });
            }
        }
        DfaDocument {
            size: dfa.size(),
            alphabet: dfa.alphabet().clone(),
            start: 1,
            accepting: (0..dfa.size()).filter(|&q| dfa.is_accepting(q)).map(|q| q + 1).collect(),
            transitions,
        }
    }
}

impl TryFrom<&DfaDocument> for Dfa {
    type Error = Error;

    fn try_from(doc: &DfaDocument) -> Result<Dfa> {
        if doc.start != 1 {
            return Err(Error::Parameter("start state must be 1".into()));
        }
        let l = doc.alphabet.len();
        let mut delta = vec![usize::MAX; doc.size * l];
        for t in &doc.transitions {
            let s = doc.alphabet.index_of(&t.label).ok_or_else(|| Error::UnknownSymbol {
                symbol: t.label.clone(),
            })?;
            if t.from == 0 || t.from > doc.size || t.to == 0 || t.to > doc.size {
                return Err(Error::Parameter(format!("transition {}->{} out of range", t.from, t.to)));
            }
            delta[(t.from - 1) * l + s] = t.to - 1;
        }
        if delta.contains(&usize::MAX) {
            return Err(Error::Parameter("transition table is not complete".into()));
        }
        let mut accepting = vec![false; doc.size];
        for &q in &doc.accepting {
            if q == 0 || q > doc.size {
                return Err(Error::Parameter(format!("accepting state {q} out of range")));
            }
            accepting[q - 1] = true;
        }
        Dfa::new(doc.alphabet.clone(), doc.size, delta, accepting)
    }
}

pub fn dfa_to_json(dfa: &Dfa) -> String {
    serde_json::to_string_pretty(&DfaDocument::from(dfa)).expect("DFA documents always serialise")
}

pub fn dfa_from_json(text: &str) -> Result<Dfa> {
    let doc: DfaDocument = serde_json::from_str(text)?;
    Dfa::try_from(&doc)
}

/// Graphviz rendering; parallel edges are merged into one labeled edge.
pub fn dfa_to_dot(dfa: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
    for q in 0..dfa.size() {
        let shape = if dfa.is_accepting(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", q + 1);
    }
    out.push_str("  start -> 1;\n");
    for q in 0..dfa.size() {
        for t in 0..dfa.size() {
            let labels: Vec<&str> = (0..dfa.symbols())
                .filter(|&s| dfa.next(q, s) == t)
                .map(|s| dfa.alphabet().symbol(s))
                .collect();
            if !labels.is_empty() {
                let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", q + 1, t + 1, labels.join(","));
            }
        }
    }
    out.push_str("}\n");
    out
}
