//! Experiment harness: exact strategy comparison, noisy non-existence and
//! find-all comparison on generated instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::automata::{Apta, ConsistencyGraph};
use crate::datagen::{self, GenConfig};
use crate::encode::SbpStrategy;
use crate::exec::map_with_workers;
use crate::sat::Backend;
use crate::search::{self, FindAllStrategy, Mode, SearchConfig, SearchOutcome};
use crate::{Error, Exec, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Minimal size from noiseless samples, one row per strategy.
    Exact,
    /// Samples from an (N+1)-state target with label noise; size N must be
    /// refuted within the flip budget.
    NoisyUnsat,
    /// All minimal automata by restart, incremental and backtracking search.
    FindAll,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Family::Exact),
            "noisy-unsat" => Ok(Family::NoisyUnsat),
            "find-all" => Ok(Family::FindAll),
            _ => Err(Error::Parameter(format!("unknown bench family `{s}`"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Exact => "exact",
            Family::NoisyUnsat => "noisy-unsat",
            Family::FindAll => "find-all",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub min_states: usize,
    pub max_states: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub time_limit: Duration,
    pub workers: usize,
    pub backend: Backend,
    pub exact_strategies: Vec<SbpStrategy>,
    /// Strings per target state, per family.
    pub exact_factor: usize,
    pub noisy_factor: usize,
    pub find_all_factor: usize,
    pub noise_percent: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            families: vec![Family::Exact, Family::NoisyUnsat, Family::FindAll],
            min_states: 4,
            max_states: 6,
            repetitions: 5,
            seed: 1,
            time_limit: Duration::from_secs(60),
            workers: 1,
            backend: Backend::Builtin,
            exact_strategies: vec![SbpStrategy::Clique, SbpStrategy::Dfs, SbpStrategy::Bfs],
            exact_factor: 50,
            noisy_factor: 50,
            find_all_factor: 10,
            noise_percent: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Found,
    NotFound,
    TimedOut,
    Failed,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Found => "found",
            Status::NotFound => "not-found",
            Status::TimedOut => "timeout",
            Status::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub family: Family,
    pub states: usize,
    pub seed: u64,
    pub method: String,
    pub status: Status,
    /// Size of the automaton found, if any.
    pub size: Option<usize>,
    /// Automata enumerated (find-all only).
    pub count: Option<usize>,
    pub clauses: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// Mixes the run seed with the instance coordinates.
fn instance_seed(base: u64, family: Family, states: usize, rep: usize) -> u64 {
    let mut x = base ^ (family as u64) << 56 ^ (states as u64) << 32 ^ rep as u64;
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.min_states == 0 || config.min_states > config.max_states {
        return Err(Error::Parameter("empty state range".into()));
    }
    let mut jobs = Vec::new();
    for &family in &config.families {
        for n in config.min_states..=config.max_states {
            for rep in 0..config.repetitions {
                jobs.push((family, n, instance_seed(config.seed, family, n, rep)));
            }
        }
    }
    let results = map_with_workers(&jobs, config.workers, |&(family, n, seed)| match family {
        Family::Exact => exact_rows(config, n, seed),
        Family::NoisyUnsat => noisy_rows(config, n, seed),
        Family::FindAll => find_all_rows(config, n, seed),
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(BenchReport { rows })
}

fn row(family: Family, states: usize, seed: u64, method: impl Into<String>) -> BenchRow {
    BenchRow {
        family,
        states,
        seed,
        method: method.into(),
        status: Status::Failed,
        size: None,
        count: None,
        clauses: 0,
        seconds: 0.0,
    }
}

fn search_row(mut r: BenchRow, outcome: Result<SearchOutcome>, start: Instant) -> BenchRow {
    r.seconds = start.elapsed().as_secs_f64();
    match outcome {
        Ok(SearchOutcome::Found(s)) => {
            r.status = Status::Found;
            r.size = Some(s.dfa.size());
            r.clauses = s.clauses;
        }
        Ok(SearchOutcome::NotFound) => r.status = Status::NotFound,
        Ok(SearchOutcome::TimedOut) => r.status = Status::TimedOut,
        Err(_) => r.status = Status::Failed,
    }
    r
}

fn exact_rows(config: &BenchConfig, n: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let inst = datagen::generate(&GenConfig {
        states: n,
        symbols: 2,
        count: config.exact_factor * n,
        noise_percent: 0.0,
        seed,
    })?;
    let mut rows = Vec::new();
    for &strategy in &config.exact_strategies {
        let search = SearchConfig {
            min_size: 1,
            max_size: n,
            strategy,
            backend: config.backend.clone(),
            time_limit: Some(config.time_limit),
            mode: Mode::Exact,
            exec: Exec::Sequential,
        };
        let start = Instant::now();
        let outcome = search::find_min_dfa(&inst.sample, &search);
        rows.push(search_row(row(Family::Exact, n, seed, strategy.to_string()), outcome, start));
    }
    Ok(rows)
}

fn noisy_rows(config: &BenchConfig, n: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let inst = datagen::generate(&GenConfig {
        states: n + 1,
        symbols: 2,
        count: config.noisy_factor * n,
        noise_percent: config.noise_percent,
        seed,
    })?;
    let budget = inst.flipped.len();
    let mut rows = Vec::new();
    for strategy in [SbpStrategy::Bfs, SbpStrategy::None] {
        let search = SearchConfig {
            min_size: n,
            max_size: n,
            strategy,
            backend: config.backend.clone(),
            time_limit: Some(config.time_limit),
            mode: Mode::Noisy { budget },
            exec: Exec::Sequential,
        };
        let start = Instant::now();
        let outcome = search::find_min_dfa(&inst.sample, &search);
        rows.push(search_row(row(Family::NoisyUnsat, n, seed, strategy.to_string()), outcome, start));
    }
    Ok(rows)
}

fn find_all_rows(config: &BenchConfig, n: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let inst = datagen::generate(&GenConfig {
        states: n,
        symbols: 2,
        count: config.find_all_factor * n,
        noise_percent: 0.0,
        seed,
    })?;
    let search = SearchConfig {
        min_size: 1,
        max_size: n,
        strategy: SbpStrategy::Bfs,
        backend: config.backend.clone(),
        time_limit: Some(config.time_limit),
        mode: Mode::FindAll,
        exec: Exec::Sequential,
    };
    let methods = ["restart", "incremental", "backtracking"];
    let colors = match search::find_min_dfa(&inst.sample, &search)? {
        SearchOutcome::Found(s) => s.dfa.size(),
        _ => {
            return Ok(methods
                .iter()
                .map(|m| {
                    let mut r = row(Family::FindAll, n, seed, *m);
                    r.status = Status::TimedOut;
                    r
                })
                .collect())
        }
    };
    let apta = Apta::build(&inst.sample);
    let cg = ConsistencyGraph::build_with(&apta, Exec::Sequential);
    let mut rows = Vec::new();
    for (method, strategy) in [("restart", FindAllStrategy::Restart), ("incremental", FindAllStrategy::Incremental)] {
        let mut r = row(Family::FindAll, n, seed, method);
        r.size = Some(colors);
        let start = Instant::now();
        match search::find_all_apta(&apta, &cg, colors, strategy, SbpStrategy::Bfs, &config.backend, Some(config.time_limit)) {
            Ok(report) => {
                r.status = Status::Found;
                r.count = Some(report.dfas.len());
                r.clauses = report.clauses;
            }
            Err(Error::PartialEnumeration { .. }) => r.status = Status::TimedOut,
            Err(_) => r.status = Status::Failed,
        }
        r.seconds = start.elapsed().as_secs_f64();
        rows.push(r);
    }
    let mut r = row(Family::FindAll, n, seed, "backtracking");
    r.size = Some(colors);
    let start = Instant::now();
    let found = search::backtracking_find_all(&apta, colors);
    r.seconds = start.elapsed().as_secs_f64();
    r.status = Status::Found;
    r.count = Some(found.len());
    rows.push(r);
    Ok(rows)
}

fn cell<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl BenchReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("family\tstates\tseed\tmethod\tstatus\tsize\tcount\tclauses\tseconds\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}",
                r.family,
                r.states,
                r.seed,
                r.method,
                r.status,
                cell(r.size),
                cell(r.count),
                r.clauses,
                r.seconds
            );
        }
        out
    }

    /// Mean seconds per family, size and method over the runs that
    /// finished. `*` marks groups with timeouts; `TL` replaces the mean when
    /// fewer than half finished.
    pub fn to_table(&self) -> String {
        let mut groups: BTreeMap<(Family, usize, &str), Vec<&BenchRow>> = BTreeMap::new();
        for r in &self.rows {
            groups.entry((r.family, r.states, r.method.as_str())).or_default().push(r);
        }
        let mut out = format!("{:<12} {:>3} {:<13} {:>5} {:>9} {:>10}\n", "family", "N", "method", "runs", "finished", "mean s");
        for ((family, n, method), rows) in &groups {
            let done: Vec<f64> = rows
                .iter()
                .filter(|r| matches!(r.status, Status::Found | Status::NotFound))
                .map(|r| r.seconds)
                .collect();
            let mean = if done.len() * 2 < rows.len() || done.is_empty() {
                "TL".to_string()
            } else {
                let m = done.iter().sum::<f64>() / done.len() as f64;
                let mark = if done.len() < rows.len() { "*" } else { "" };
                format!("{m:.3}{mark}")
            };
            let _ = writeln!(
                out,
                "{:<12} {:>3} {:<13} {:>5} {:>9} {:>10}",
                family.to_string(),
                n,
                method,
                rows.len(),
                done.len(),
                mean
            );
        }
        out
    }

    fn by_instance(&self, family: Family) -> BTreeMap<(usize, u64), Vec<&BenchRow>> {
        let mut m: BTreeMap<(usize, u64), Vec<&BenchRow>> = BTreeMap::new();
        for r in self.rows.iter().filter(|r| r.family == family) {
            m.entry((r.states, r.seed)).or_default().push(r);
        }
        m
    }

    /// Exact-family instances where the finished strategies disagree on the
    /// minimal size, or found nothing within the target size.
    pub fn exact_disagreements(&self) -> Vec<(usize, u64)> {
        self.by_instance(Family::Exact)
            .into_iter()
            .filter(|(_, rows)| {
                let sizes: Vec<Option<usize>> = rows
                    .iter()
                    .filter(|r| r.status != Status::TimedOut)
                    .map(|r| r.size)
                    .collect();
                sizes.iter().any(|s| s.is_none()) || sizes.windows(2).any(|w| w[0] != w[1])
            })
            .map(|(k, _)| k)
            .collect()
    }

    /// Find-all instances where finished methods report different counts.
    pub fn find_all_disagreements(&self) -> Vec<(usize, u64)> {
        self.by_instance(Family::FindAll)
            .into_iter()
            .filter(|(_, rows)| {
                let counts: Vec<Option<usize>> = rows
                    .iter()
                    .filter(|r| r.status == Status::Found)
                    .map(|r| r.count)
                    .collect();
                counts.windows(2).any(|w| w[0] != w[1])
            })
            .map(|(k, _)| k)
            .collect()
    }

    /// Fraction of noisy-family runs of `method` that refuted size N.
    pub fn noisy_refutation_rate(&self, method: &str) -> f64 {
        let rows: Vec<_> = self
            .rows
            .iter()
            .filter(|r| r.family == Family::NoisyUnsat && r.method == method)
            .collect();
        if rows.is_empty() {
            return 0.0;
        }
        rows.iter().filter(|r| r.status == Status::NotFound).count() as f64 / rows.len() as f64
    }
}
