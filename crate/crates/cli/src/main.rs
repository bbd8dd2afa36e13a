//! `repnum`: repetitive numbers, co-divisors, factor tables and division-chain puzzles.

mod config;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use config::{CliConfig, FileConfig, Output, Overrides};
use repnum::factor::{FactorConfig, FactorError, Factorization, Factorizer};
use repnum::natural::Natural;
use repnum::puzzle::{
    new_puzzle, verify_transcript, ChainOrder, FailedAt, PuzzleError, PuzzleTranscript, Verdict,
};
use repnum::repetition::{all_generators, co_divisor, minimal_generator, DigitGuard};
use repnum::sequences::{
    render_table_records, render_table_text, reproduce_table, term, SequenceError, SequenceId,
};
use repnum::transcript::{read_transcript, write_transcript};

#[derive(Parser, Debug)]
#[command(
    name = "repnum",
    version,
    about = "Repetitive numbers, co-divisors and division-chain puzzles"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Factorization cache file.
    #[arg(long, global = true, env = "REPNUM_CACHE", value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Seed for puzzle generation and factoring retries (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Refuse to build numbers with more digits than this (at least 64).
    #[arg(long, global = true, value_name = "DIGITS")]
    digit_guard: Option<usize>,
    /// Pollard rho budget, in function evaluations per number.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    /// Group digits in threes in text output.
    #[arg(long, global = true)]
    group: bool,
    /// TOML file with defaults for the options above.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print s(k, r), the number written 1 (0^(k-1) 1)^(r-1).
    Codivisor {
        k: usize,
        r: usize,
        /// Also print its prime factorization.
        #[arg(long)]
        factor: bool,
    },
    /// Prime factorization of N.
    Factor { n: String },
    /// Minimal generator of N and every other generator.
    Generator { n: String },
    /// Terms START..=END of A000533, A261544, s:k=<k> or s:r=<r>, as a b-file.
    Seq {
        id: String,
        start: usize,
        end: usize,
    },
    /// Reproduce one of the three factor tables.
    Table { which: u8 },
    /// Division-chain puzzles.
    #[command(subcommand)]
    Puzzle(PuzzleCommand),
}

#[derive(Subcommand, Debug)]
enum PuzzleCommand {
    /// Write a transcript skeleton for a random k-digit generator repeated r times.
    New {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        r: usize,
        /// Shuffle the divisor chain (seeded).
        #[arg(long)]
        shuffle: bool,
        /// Output file (default stdout).
        #[arg(short, long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Fill in every quotient of a transcript.
    Solve {
        /// Transcript file, or - for stdin.
        file: PathBuf,
        #[arg(short, long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check every answer of a transcript.
    Verify {
        /// Transcript file, or - for stdin.
        file: PathBuf,
    },
}

enum Failure {
    Verification,
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl From<PuzzleError> for Failure {
    fn from(e: PuzzleError) -> Self {
        match e {
            PuzzleError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SequenceError> for Failure {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::Incomplete { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

struct Context {
    config: CliConfig,
    factorizer: Factorizer,
}

impl Context {
    fn new(config: CliConfig) -> Self {
        let fc = FactorConfig {
            budget: config.budget,
            seed: config.seed,
        };
        let factorizer = match &config.cache_path {
            Some(path) => {
                let (f, err) = Factorizer::with_cache_file(fc, path);
                if let Some(err) = err {
                    log::warn!("ignoring cache {}: {err}", path.display());
                }
                f
            }
            None => Factorizer::new(fc),
        };
        Context { config, factorizer }
    }

    fn guard(&self) -> DigitGuard {
        DigitGuard::new(self.config.digit_guard)
    }

    fn num(&self, n: &Natural) -> String {
        if self.config.group {
            n.grouped()
        } else {
            n.to_string()
        }
    }

    fn factors(&self, f: &Factorization) -> String {
        if f.factors().is_empty() {
            return "1".into();
        }
        f.factors()
            .iter()
            .map(|(p, e)| match e {
                1 => self.num(p),
                _ => format!("{}^{e}", self.num(p)),
            })
            .collect::<Vec<_>>()
            .join(" · ")
    }

    fn factorize(&self, n: &Natural) -> Result<Factorization, Failure> {
        let f = self.factorizer.factorize(n).map_err(|e| match e {
            FactorError::Zero => Failure::Usage(e.to_string()),
        })?;
        if !f.is_complete() {
            return Err(Failure::Budget(format!(
                "budget exhausted; partial factorization {n} = {f}"
            )));
        }
        Ok(f)
    }

    fn records(&self) -> bool {
        self.config.output == Output::Records
    }
}

#[derive(Serialize)]
struct PrimePower {
    prime: String,
    multiplicity: u32,
}

fn prime_powers(f: &Factorization) -> Vec<PrimePower> {
    f.factors()
        .iter()
        .map(|(p, e)| PrimePower {
            prime: p.to_string(),
            multiplicity: *e,
        })
        .collect()
}

fn line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

fn parse_natural(s: &str) -> Result<Natural, Failure> {
    s.parse()
        .map_err(|e| Failure::Usage(format!("invalid number {s:?}: {e}")))
}

fn cmd_codivisor(cx: &Context, k: usize, r: usize, factor: bool) -> CmdResult {
    let s = co_divisor(k, r, cx.guard()).map_err(|e| Failure::Usage(e.to_string()))?;
    let f = if factor {
        Some(cx.factorize(s.value())?)
    } else {
        None
    };
    if cx.records() {
        let mut v = json!({"k": k, "r": r, "value": s.value().to_string()});
        if let Some(f) = &f {
            v["factors"] = json!(prime_powers(f));
        }
        return Ok(line(v));
    }
    Ok(match f {
        Some(f) => format!("{} = {}\n", cx.num(s.value()), cx.factors(&f)),
        None => format!("{}\n", cx.num(s.value())),
    })
}

fn cmd_factor(cx: &Context, n: &str) -> CmdResult {
    let n = parse_natural(n)?;
    let f = cx.factorize(&n)?;
    if cx.records() {
        return Ok(line(
            json!({"n": n.to_string(), "factors": prime_powers(&f)}),
        ));
    }
    Ok(format!("{}\n", cx.factors(&f)))
}

fn cmd_generator(cx: &Context, n: &str) -> CmdResult {
    let n = parse_natural(n)?;
    let usage = |e: repnum::repetition::RepetitionError| Failure::Usage(e.to_string());
    let (min, r) = minimal_generator(&n).map_err(usage)?;
    let all = all_generators(&n).map_err(usage)?;
    if cx.records() {
        let gens: Vec<_> = all
            .iter()
            .map(|(g, r)| json!({"generator": g.to_string(), "length": g.length(), "replication": r}))
            .collect();
        return Ok(line(json!({
            "n": n.to_string(),
            "minimal": {"generator": min.to_string(), "length": min.length(), "replication": r},
            "generators": gens,
        })));
    }
    let mut out = format!(
        "minimal generator {} (length {}, replication {r})\n",
        cx.num(&min.value()),
        min.length()
    );
    for (g, r) in &all {
        out.push_str(&format!(
            "{} (length {}, replication {r})\n",
            cx.num(&g.value()),
            g.length()
        ));
    }
    Ok(out)
}

fn cmd_seq(cx: &Context, id: &str, start: usize, end: usize) -> CmdResult {
    let id: SequenceId = id.parse()?;
    let mut out = String::new();
    for index in start..=end {
        let value = term(id, index, cx.guard())?;
        if cx.records() {
            out.push_str(&line(json!({"n": index, "value": value.to_string()})));
        } else {
            out.push_str(&format!("{index} {}\n", cx.num(&value)));
        }
    }
    Ok(out)
}

fn cmd_table(cx: &Context, which: u8) -> CmdResult {
    let rows = reproduce_table(which, &cx.factorizer, cx.guard())?;
    if cx.records() {
        return Ok(render_table_records(&rows));
    }
    Ok(render_table_text(&rows, |n| cx.num(n)))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Writes to `out` when given, otherwise returns the text for stdout.
fn emit(text: String, out: Option<&Path>) -> CmdResult {
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn describe(n: Option<&Natural>, cx: &Context) -> String {
    n.map_or_else(|| "nothing".into(), |n| cx.num(n))
}

fn cmd_puzzle(cx: &Context, cmd: &PuzzleCommand) -> CmdResult {
    match cmd {
        PuzzleCommand::New { k, r, shuffle, out } => {
            let order = if *shuffle {
                ChainOrder::Shuffled
            } else {
                ChainOrder::Ascending
            };
            let p = new_puzzle(*k, *r, cx.config.seed, order, &cx.factorizer, cx.guard())?;
            emit(
                write_transcript(&PuzzleTranscript::skeleton(p)),
                out.as_deref(),
            )
        }
        PuzzleCommand::Solve { file, out } => {
            let t = read_transcript(&read_input(file)?, cx.guard())?;
            let solved = PuzzleTranscript::solved(t.instance().clone());
            emit(write_transcript(&solved), out.as_deref())
        }
        PuzzleCommand::Verify { file } => {
            let t = read_transcript(&read_input(file)?, cx.guard())?;
            let verdict = verify_transcript(&t);
            let text = match (&verdict, cx.records()) {
                (Verdict::Pass, false) => "PASS\n".to_string(),
                (Verdict::Pass, true) => line(json!({"verdict": "PASS"})),
                (
                    Verdict::Fail {
                        at,
                        expected,
                        claimed,
                    },
                    false,
                ) => {
                    let at = match at {
                        FailedAt::Step(i) => format!("step {i}"),
                        FailedAt::Final => "final answer".into(),
                    };
                    format!(
                        "FAIL at {at}: expected {}, claimed {}\n",
                        cx.num(expected),
                        describe(claimed.as_ref(), cx)
                    )
                }
                (
                    Verdict::Fail {
                        at,
                        expected,
                        claimed,
                    },
                    true,
                ) => {
                    let step = match at {
                        FailedAt::Step(i) => json!(i),
                        FailedAt::Final => json!("final"),
                    };
                    line(json!({
                        "verdict": "FAIL",
                        "step": step,
                        "expected": expected.to_string(),
                        "claimed": claimed.as_ref().map(Natural::to_string),
                    }))
                }
            };
            if verdict.is_pass() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Verification)
            }
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let g = cli.global;
    let file = match &g.config {
        Some(path) => FileConfig::load(path).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let config = CliConfig::resolve(
        Overrides {
            cache_path: g.cache,
            seed: g.seed,
            digit_guard: g.digit_guard,
            budget: g.budget,
            output: g.output,
            group: g.group,
        },
        file,
    )
    .map_err(Failure::Usage)?;
    let cx = Context::new(config);
    match &cli.command {
        Command::Codivisor { k, r, factor } => cmd_codivisor(&cx, *k, *r, *factor),
        Command::Factor { n } => cmd_factor(&cx, n),
        Command::Generator { n } => cmd_generator(&cx, n),
        Command::Seq { id, start, end } => cmd_seq(&cx, id, *start, *end),
        Command::Table { which } => cmd_table(&cx, *which),
        Command::Puzzle(p) => cmd_puzzle(&cx, p),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Usage(msg) | Failure::Budget(msg) => eprintln!("error: {msg}"),
                Failure::Verification => {}
            }
            ExitCode::from(f.code())
        }
    }
}
