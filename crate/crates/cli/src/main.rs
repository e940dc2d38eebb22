//! `dfaid`: minimal DFA identification from labeled samples.
//!
//! Exit status: 0 an automaton was found (or the command succeeded),
//! 1 runtime error, 2 usage error, 3 no automaton in the size range,
//! 4 time limit reached.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use dfaid::automata::io::{dfa_to_dot, dfa_to_json, parse_abbadingo, write_abbadingo, DfaDocument};
use dfaid::bench::{run_bench, BenchConfig, Family};
use dfaid::datagen::{flip_count, generate, GenConfig};
use dfaid::encode::SbpStrategy;
use dfaid::sat::Backend;
use dfaid::search::{
    backtracking_find_all, find_all_apta, find_min_dfa, FindAllStrategy, Mode, SearchConfig, SearchOutcome,
};
use dfaid::{Apta, ConsistencyGraph, Dfa, Error, Exec, Sample};
use serde_json::json;

const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;
const EXIT_TIMED_OUT: u8 = 4;

#[derive(Parser)]
#[command(name = "dfaid", version, about = "Minimal DFA identification by SAT")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest automaton consistent with every label.
    Infer(InferArgs),
    /// Smallest automaton that gets at most K labels wrong.
    InferNoisy(NoisyArgs),
    /// Every automaton of the minimal size, up to isomorphism.
    FindAll(FindAllArgs),
    /// Random target automaton and a sample labeled by it.
    Gen(GenArgs),
    /// Run the experiment families and print a comparison table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Sample in Abbadingo format.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    min: usize,
    #[arg(long, default_value_t = 30)]
    max: usize,
    /// Symmetry breaking: none, clique, dfs or bfs.
    #[arg(long, default_value = "bfs")]
    sbp: SbpStrategy,
    /// `builtin` or `external:<command>`.
    #[arg(long, default_value = "builtin", value_parser = Backend::from_str)]
    solver: Backend,
    /// Seconds per solver call; 0 disables the limit.
    #[arg(long, default_value_t = 60.0)]
    tl: f64,
    /// Write `<out>.json` and `<out>.dot` instead of printing JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for graph construction.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct InferArgs {
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct NoisyArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Wrong labels allowed: a count, or a percentage of the sample (`2%`).
    #[arg(long)]
    k: Budget,
}

#[derive(Args)]
struct FindAllArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// restart, incremental or backtracking.
    #[arg(long, default_value = "incremental")]
    strategy: Enumerator,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    states: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    alpha: usize,
    /// Number of distinct strings; defaults to 50 per state.
    #[arg(long)]
    count: Option<usize>,
    /// Percentage of labels to flip.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sample file; the target goes to the sibling `.truth.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated: exact, noisy-unsat, find-all.
    #[arg(long, value_delimiter = ',', default_value = "exact,noisy-unsat,find-all")]
    family: Vec<Family>,
    #[arg(long, default_value_t = 4)]
    min: usize,
    #[arg(long, default_value_t = 6)]
    max: usize,
    /// Instances per size and family.
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Seconds per solver call.
    #[arg(long, default_value_t = 60.0)]
    tl: f64,
    #[arg(long, default_value = "builtin", value_parser = Backend::from_str)]
    solver: Backend,
    /// Label noise for the noisy family, in percent.
    #[arg(long, default_value_t = 1.0)]
    noise: f64,
    /// Parallel instances.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Also write the per-instance rows as TSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug)]
enum Budget {
    Count(usize),
    Percent(f64),
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_suffix('%') {
            Some(p) => match p.trim().parse::<f64>() {
                Ok(v) if (0.0..=100.0).contains(&v) => Ok(Budget::Percent(v)),
                _ => Err(format!("`{s}` is not a percentage between 0 and 100")),
            },
            None => s
                .trim()
                .parse()
                .map(Budget::Count)
                .map_err(|_| format!("`{s}` is neither a count nor a percentage")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Enumerator {
    Sat(FindAllStrategy),
    Backtracking,
}

impl FromStr for Enumerator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "backtracking" => Ok(Enumerator::Backtracking),
            _ => s.parse().map(Enumerator::Sat).map_err(|e: Error| e.to_string()),
        }
    }
}

/// Command failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_ERROR,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_ERROR,
        message: format!("{}: {e}", path.display()),
    }
}

fn time_limit(seconds: f64) -> Result<Option<Duration>, Failure> {
    if !seconds.is_finite() || seconds < 0.0 {
        return Err(usage(format!("--tl {seconds} is not a non-negative number of seconds")));
    }
    Ok((seconds > 0.0).then(|| Duration::from_secs_f64(seconds)))
}

fn read_sample(path: &Path) -> Result<Sample, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    parse_abbadingo(&text).map_err(|e| Failure {
        code: EXIT_ERROR,
        message: format!("{}: {e}", path.display()),
    })
}

/// Writes to standard output; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut name = base.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn search_config(args: &SearchArgs, mode: Mode) -> Result<SearchConfig, Failure> {
    if args.min == 0 || args.min > args.max {
        return Err(usage(format!("--min {} --max {} is not a size range", args.min, args.max)));
    }
    Ok(SearchConfig {
        min_size: args.min,
        max_size: args.max,
        strategy: args.sbp,
        backend: args.solver.clone(),
        time_limit: time_limit(args.tl)?,
        mode,
        exec: if args.jobs > 1 { Exec::Parallel } else { Exec::Sequential },
    })
}

fn word_strings(sample: &Sample, words: &[Vec<usize>]) -> Vec<String> {
    let alphabet = sample.alphabet();
    words
        .iter()
        .map(|w| w.iter().map(|&s| alphabet.symbol(s)).collect::<Vec<_>>().join(" "))
        .collect()
}

fn outcome_code(outcome: &SearchOutcome, args: &SearchArgs) -> Result<(), Failure> {
    match outcome {
        SearchOutcome::Found(_) => Ok(()),
        SearchOutcome::NotFound => Err(Failure {
            code: EXIT_NOT_FOUND,
            message: format!("no automaton with {} to {} states", args.min, args.max),
        }),
        SearchOutcome::TimedOut => Err(Failure {
            code: EXIT_TIMED_OUT,
            message: "time limit reached".into(),
        }),
    }
}

fn report_solution(sample: &Sample, args: &SearchArgs, outcome: SearchOutcome) -> Result<(), Failure> {
    outcome_code(&outcome, args)?;
    let SearchOutcome::Found(solution) = outcome else { unreachable!() };
    eprintln!(
        "found {} states ({} clauses, {} variables) in {:.3} s",
        solution.dfa.size(),
        solution.clauses,
        solution.variables,
        solution.elapsed.as_secs_f64()
    );
    let report = json!({
        "size": solution.dfa.size(),
        "clauses": solution.clauses,
        "variables": solution.variables,
        "seconds": solution.elapsed.as_secs_f64(),
        "flipped": word_strings(sample, &solution.flipped),
        "dfa": DfaDocument::from(&solution.dfa),
    });
    match &args.out {
        Some(base) => {
            write_file(&with_suffix(base, ".json"), &dfa_to_json(&solution.dfa))?;
            write_file(&with_suffix(base, ".dot"), &dfa_to_dot(&solution.dfa))?;
            emit(&format!("{}\n", solution.dfa.size()));
        }
        None => emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("plain data"))),
    }
    Ok(())
}

fn cmd_infer(args: &InferArgs) -> Result<(), Failure> {
    let config = search_config(&args.search, Mode::Exact)?;
    let sample = read_sample(&args.search.input)?;
    let outcome = find_min_dfa(&sample, &config)?;
    report_solution(&sample, &args.search, outcome)
}

fn cmd_infer_noisy(args: &NoisyArgs) -> Result<(), Failure> {
    if args.search.sbp == SbpStrategy::Clique {
        return Err(usage("--sbp clique needs the consistency graph, which noisy samples do not have"));
    }
    let sample = read_sample(&args.search.input)?;
    let budget = match args.k {
        Budget::Count(k) => k,
        Budget::Percent(p) => flip_count(p, sample.len()),
    };
    if budget > sample.len() {
        return Err(usage(format!("--k {budget} exceeds the {} labeled strings", sample.len())));
    }
    let config = search_config(&args.search, Mode::Noisy { budget })?;
    let outcome = find_min_dfa(&sample, &config)?;
    report_solution(&sample, &args.search, outcome)
}

fn cmd_find_all(args: &FindAllArgs) -> Result<(), Failure> {
    let search = &args.search;
    if matches!(search.sbp, SbpStrategy::None | SbpStrategy::Clique) && !matches!(args.strategy, Enumerator::Backtracking) {
        return Err(usage("find-all needs --sbp dfs or --sbp bfs to list each automaton once"));
    }
    let config = search_config(search, Mode::FindAll)?;
    let sample = read_sample(&search.input)?;
    let outcome = find_min_dfa(&sample, &config)?;
    outcome_code(&outcome, search)?;
    let colors = outcome.dfa().map(Dfa::size).expect("found");
    let apta = Apta::build(&sample);
    let (dfas, partial) = match args.strategy {
        Enumerator::Backtracking => (backtracking_find_all(&apta, colors), false),
        Enumerator::Sat(strategy) => {
            let cg = ConsistencyGraph::build_with(&apta, config.exec);
            match find_all_apta(&apta, &cg, colors, strategy, search.sbp, &search.solver, config.time_limit) {
                Ok(report) => (report.dfas, false),
                Err(Error::PartialEnumeration { found }) => (found, true),
                Err(e) => return Err(e.into()),
            }
        }
    };
    eprintln!("{} automata with {colors} states{}", dfas.len(), if partial { " before the time limit" } else { "" });
    let docs: Vec<DfaDocument> = dfas.iter().map(DfaDocument::from).collect();
    let report = json!({ "size": colors, "count": dfas.len(), "complete": !partial, "dfas": docs });
    let text = serde_json::to_string_pretty(&report).expect("plain data");
    match &search.out {
        Some(base) => {
            write_file(&with_suffix(base, ".json"), &text)?;
            for (i, dfa) in dfas.iter().enumerate() {
                write_file(&with_suffix(base, &format!("-{}.dot", i + 1)), &dfa_to_dot(dfa))?;
            }
            emit(&format!("{}\n", dfas.len()));
        }
        None => emit(&format!("{text}\n")),
    }
    if partial {
        return Err(Failure {
            code: EXIT_TIMED_OUT,
            message: "time limit reached; the list is incomplete".into(),
        });
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let config = GenConfig {
        states: args.states,
        symbols: args.alpha,
        count: args.count.unwrap_or(50 * args.states),
        noise_percent: args.noise,
        seed: args.seed,
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    let instance = generate(&config)?;
    let sample = write_abbadingo(&instance.sample);
    let truth = serde_json::to_string_pretty(&instance.truth()).expect("plain data");
    match &args.out {
        Some(path) => {
            write_file(path, &sample)?;
            write_file(&path.with_extension("truth.json"), &truth)?;
        }
        None => emit(&sample),
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    if args.min == 0 || args.min > args.max {
        return Err(usage(format!("--min {} --max {} is not a size range", args.min, args.max)));
    }
    let config = BenchConfig {
        families: args.family.clone(),
        min_states: args.min,
        max_states: args.max,
        repetitions: args.reps,
        seed: args.seed,
        time_limit: time_limit(args.tl)?.ok_or_else(|| usage("bench needs a positive --tl"))?,
        workers: args.jobs.max(1),
        backend: args.solver.clone(),
        noise_percent: args.noise,
        ..BenchConfig::default()
    };
    let report = run_bench(&config)?;
    if let Some(path) = &args.out {
        write_file(path, &report.to_tsv())?;
    }
    emit(&report.to_table());
    let exact = report.exact_disagreements();
    let find_all = report.find_all_disagreements();
    if !exact.is_empty() || !find_all.is_empty() {
        return Err(Failure {
            code: EXIT_ERROR,
            message: format!(
                "methods disagree: exact {exact:?}, find-all {find_all:?} (states, seed)"
            ),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Infer(a) => cmd_infer(a),
        Command::InferNoisy(a) => cmd_infer_noisy(a),
        Command::FindAll(a) => cmd_find_all(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dfaid: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
