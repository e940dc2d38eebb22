//! Seeded random instances: a minimal target automaton, distinct sample
//! strings labeled by it, and optional label noise.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automata::io::DfaDocument;
use crate::automata::{Alphabet, Dfa, Sample, Word};
use crate::{Error, Result};

/// Resampling cap for [`generate_target`].
pub const MAX_ATTEMPTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub states: usize,
    pub symbols: usize,
    pub count: usize,
    /// Percentage of labels to flip, `0..=100`.
    pub noise_percent: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.states == 0 || self.symbols == 0 {
            return Err(Error::Parameter("states and alphabet size must be positive".into()));
        }
        if !(0.0..=100.0).contains(&self.noise_percent) {
            return Err(Error::Parameter(format!("noise {}% is outside 0..=100", self.noise_percent)));
        }
        Ok(())
    }

    /// Longest generated string.
    pub fn max_length(&self) -> usize {
        2 * self.states + 2
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform transition table and acceptance set over `symbols` numeric
/// symbols, resampled until every state is reachable and no two states
/// are equivalent.
pub fn generate_target(config: &GenConfig) -> Result<Dfa> {
    config.validate()?;
    let (n, l) = (config.states, config.symbols);
    let mut rng = rng(config.seed, 1);
    for _ in 0..MAX_ATTEMPTS {
        let delta = (0..n * l).map(|_| rng.random_range(0..n)).collect();
        let accepting = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let dfa = Dfa::new(Alphabet::numeric(l), n, delta, accepting)?;
        if dfa.is_reachable() && dfa.minimized_size() == n {
            return Ok(dfa);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        states: n,
    })
}

/// `count` distinct strings labeled by `dfa`. Each draw picks a length
/// uniformly in `0..=max_length`, then a uniform string of that length.
pub fn sample_strings(dfa: &Dfa, count: usize, max_length: usize, seed: u64) -> Result<Sample> {
    let l = dfa.symbols();
    let available = (0..=max_length as u32).try_fold(0usize, |acc, k| acc.checked_add(l.checked_pow(k)?));
    if available.is_some_and(|a| count > a) {
        return Err(Error::Parameter(format!(
            "{count} distinct strings requested, only {} exist up to length {max_length}",
            available.unwrap()
        )));
    }
    let mut rng = rng(seed, 2);
    let mut seen: HashSet<Word> = HashSet::with_capacity(count);
    let mut entries = Vec::with_capacity(count);
    while entries.len() < count {
        let len = rng.random_range(0..=max_length);
        let word: Word = (0..len).map(|_| rng.random_range(0..l)).collect();
        if seen.insert(word.clone()) {
            let label = dfa.label_of(&word);
            entries.push((word, label));
        }
    }
    Sample::new(dfa.alphabet().clone(), entries)
}

/// Number of labels flipped at `percent` noise, rounded half up.
pub fn flip_count(percent: f64, count: usize) -> usize {
    (percent * count as f64 / 100.0 + 0.5).floor() as usize
}

/// Flips exactly [`flip_count`] distinct labels, chosen uniformly.
pub fn flip_labels(sample: &Sample, percent: f64, seed: u64) -> Result<(Sample, Vec<Word>)> {
    if !(0.0..=100.0).contains(&percent) {
        return Err(Error::Parameter(format!("noise {percent}% is outside 0..=100")));
    }
    let k = flip_count(percent, sample.len()).min(sample.len());
    let mut rng = rng(seed, 3);
    let mut chosen = index::sample(&mut rng, sample.len(), k).into_vec();
    chosen.sort_unstable();
    let mut entries = sample.entries().to_vec();
    let mut flipped = Vec::with_capacity(k);
    for i in chosen {
        entries[i].1 = entries[i].1.flipped();
        flipped.push(entries[i].0.clone());
    }
    Ok((Sample::new(sample.alphabet().clone(), entries)?, flipped))
}

/// A generated instance together with the facts used to build it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub config: GenConfig,
    pub target: Dfa,
    pub clean: Sample,
    pub sample: Sample,
    pub flipped: Vec<Word>,
}

pub fn generate(config: &GenConfig) -> Result<Instance> {
    let target = generate_target(config)?;
    let clean = sample_strings(&target, config.count, config.max_length(), config.seed)?;
    let (sample, flipped) = flip_labels(&clean, config.noise_percent, config.seed)?;
    Ok(Instance {
        config: *config,
        target,
        clean,
        sample,
        flipped,
    })
}

/// Contents of the `.truth.json` file written next to a generated sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truth {
    pub config: GenConfig,
    pub target: DfaDocument,
    /// Flipped strings, symbols separated by spaces.
    pub flipped: Vec<String>,
}

impl Instance {
    pub fn truth(&self) -> Truth {
        let alphabet = self.sample.alphabet();
        Truth {
            config: self.config,
            target: DfaDocument::from(&self.target),
            flipped: self
                .flipped
                .iter()
                .map(|w| w.iter().map(|&s| alphabet.symbol(s)).collect::<Vec<_>>().join(" "))
                .collect(),
        }
    }

    /// Number of sample strings whose label disagrees with the target.
    pub fn target_errors(&self) -> usize {
        self.sample
            .entries()
            .iter()
            .filter(|(w, l)| self.target.label_of(w) != *l)
            .count()
    }
}
