//! `franklin` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 precondition violation. Errors go to stderr as one JSON object.

mod io;
mod report;

/// Writes to stdout; a closed pipe ends the process quietly.
fn write_stdout(text: &str) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!(
            "{}",
            json!({"error": {"code": "io", "kind": "malformed", "message": e.to_string()}})
        );
        std::process::exit(2);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { write_stdout(&format!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { write_stdout(&(format!($($arg)*) + "\n")) };
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use franklin::format::to_csv;
use franklin::pattern::{generate, preset_seeds};
use franklin::search::Progress;
use franklin::{
    classify, compose, decompose, preset, search_with, verify, Archetype, AuxPair, Corpus, Error,
    ErrorKind, FixtureEntry, Hooks, IndexTargets, Label, Payload, Preset, PropertyReport, Pruning,
    SearchMode, SearchOptions, SeedPattern, Square,
};
use serde_json::json;

use report::TargetSource;

#[derive(Parser)]
#[command(
    name = "franklin",
    version,
    about = "Verify, compose, generate and search Franklin squares"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every line condition and report which properties hold.
    Verify(VerifyArgs),
    /// Split a natural square into its quotient and remainder squares.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out_q: Option<PathBuf>,
        #[arg(long)]
        out_r: Option<PathBuf>,
    },
    /// Build M = nQ + R + 1 from a quotient and remainder square.
    Compose {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a square from a named preset or from seed patterns.
    Generate(GenerateArgs),
    /// Enumerate natural Franklin squares of a given order.
    Search(SearchArgs),
    /// Access the bundled fixture corpus.
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// CSV or JSON square file, `-` for stdin.
    file: PathBuf,
    /// `natural`, `balanced` or an integer line sum. Without it the target
    /// is picked from the square's values.
    #[arg(long)]
    target: Option<String>,
    #[arg(long, conflicts_with = "summary")]
    json: bool,
    /// Plain-text report (the default).
    #[arg(long)]
    summary: bool,
    /// Exit 1 unless the square has this label.
    #[arg(long)]
    require: Option<String>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, conflicts_with_all = ["order", "q_seed", "r_seed", "archetypes"])]
    preset: Option<String>,
    #[arg(long, requires_all = ["q_seed", "r_seed", "archetypes"])]
    order: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    q_seed: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    r_seed: Option<Vec<usize>>,
    /// Quotient and remainder archetypes, e.g. `ROW_ALTERNATE,COLUMN_ALTERNATE`.
    #[arg(long, value_delimiter = ',')]
    archetypes: Option<Vec<String>>,
    /// Square output; CSV unless the name ends in `.json`. Default stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    out_q: Option<PathBuf>,
    #[arg(long)]
    out_r: Option<PathBuf>,
    /// JSON report output. Without it a summary goes to stderr.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Count,
    First,
    Stream,
}

#[derive(Clone, Copy, ValueEnum)]
enum PruningArg {
    Full,
    SemiMagic,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value = "count")]
    mode: ModeArg,
    /// Allow enumerations that have no node budget and may run for hours.
    #[arg(long)]
    long_run: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Stop after this many search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Count squares up to rotation and reflection.
    #[arg(long)]
    symmetry: bool,
    #[arg(long, value_enum, default_value = "full")]
    pruning: PruningArg,
    /// Write progress records to stderr.
    #[arg(long)]
    progress: bool,
}

#[derive(Subcommand)]
enum FixturesCommand {
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print a fixture as CSV; an auxiliary pair prints Q, a blank line, R.
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
pub struct CliError {
    code: &'static str,
    kind: Option<ErrorKind>,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: e.code(),
            kind: Some(e.kind()),
            message: e.to_string(),
        }
    }
}

impl CliError {
    fn verification(message: String) -> Self {
        CliError {
            code: "verification_failed",
            kind: None,
            message,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: "usage",
            kind: Some(ErrorKind::Malformed),
            message: message.into(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind {
            None => 1,
            Some(ErrorKind::Malformed) => 2,
            Some(ErrorKind::Precondition) => 3,
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = match e.kind {
                None => "verification",
                Some(ErrorKind::Malformed) => "malformed",
                Some(ErrorKind::Precondition) => "precondition",
            };
            let record = json!({"error": {"code": e.code, "kind": kind, "message": e.message}});
            eprintln!("{record}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Verify(args) => run_verify(args),
        Command::Decompose { file, out_q, out_r } => {
            let pair = decompose(&io::read_square(&file)?)?;
            emit_pair(&pair, out_q.as_deref(), out_r.as_deref())
        }
        Command::Compose { q, r, out } => {
            let pair = AuxPair::new(io::read_square(&q)?, io::read_square(&r)?)?;
            emit_square(&compose(&pair)?, out.as_deref())
        }
        Command::Generate(args) => run_generate(args),
        Command::Search(args) => run_search(args),
        Command::Fixtures { command } => run_fixtures(command),
    }
}

fn run_verify(args: VerifyArgs) -> CliResult {
    let sq = io::read_square(&args.file)?;
    let n = sq.order();
    let require = args
        .require
        .as_deref()
        .map(|s| {
            Label::parse(s).map_err(|_| CliError::usage(format!("--require: unknown label `{s}`")))
        })
        .transpose()?;
    if matches!(require, Some(Label::Franklin | Label::PandiagonalFranklin)) && n % 2 == 1 {
        return Err(Error::EvenOrderRequired(n).into());
    }
    let (report, source) = match args.target.as_deref() {
        None => {
            let c = classify(&sq);
            let source = if c.inferred {
                TargetSource::Inferred
            } else if c.report.flags.natural {
                TargetSource::Natural
            } else {
                TargetSource::Balanced
            };
            (c.report, source)
        }
        Some("natural") => (
            verify(&sq, &IndexTargets::natural(n))?,
            TargetSource::Natural,
        ),
        Some("balanced") => (
            verify(&sq, &IndexTargets::balanced(n))?,
            TargetSource::Balanced,
        ),
        Some(other) => {
            let sum: i128 = other.parse().map_err(|_| {
                CliError::usage(format!(
                    "--target: expected natural, balanced or an integer, got `{other}`"
                ))
            })?;
            (
                verify(&sq, &IndexTargets::new(n, sum))?,
                TargetSource::Explicit,
            )
        }
    };
    if args.json {
        outln!("{}", pretty(&report::report_json(&report, source)));
    } else {
        out!("{}", report::report_summary(&report, source));
    }
    match require {
        Some(label) if !report.flags.has(label) => {
            Err(CliError::verification(format!("square is not {label}")))
        }
        _ => Ok(()),
    }
}

fn run_generate(args: GenerateArgs) -> CliResult {
    let (pair, square, report) = match (&args.preset, args.order) {
        (Some(name), _) => match preset_seeds(name) {
            Some((q, r)) => {
                let g = generate(&q, &r)?;
                (Some(g.pair), g.square, g.report)
            }
            None => match preset(name)? {
                Preset::Square(sq) => {
                    let report = classify(&sq).report;
                    (None, sq, report)
                }
                Preset::Pair(pair) => {
                    let sq = compose(&pair)?;
                    let report = classify(&sq).report;
                    (Some(pair), sq, report)
                }
            },
        },
        (None, Some(n)) => {
            let archetypes = args.archetypes.unwrap_or_default();
            let [qa, ra] = archetypes.as_slice() else {
                return Err(CliError::usage("--archetypes takes exactly two names"));
            };
            let q = SeedPattern::new(qa.parse::<Archetype>()?, n, args.q_seed.unwrap_or_default())?;
            let r = SeedPattern::new(ra.parse::<Archetype>()?, n, args.r_seed.unwrap_or_default())?;
            let g = generate(&q, &r)?;
            (Some(g.pair), g.square, g.report)
        }
        (None, None) => return Err(CliError::usage("give --preset or --order with seeds")),
    };
    if let Some(pair) = &pair {
        if let Some(path) = &args.out_q {
            io::write_square(path, pair.quotient(), None)?;
        }
        if let Some(path) = &args.out_r {
            io::write_square(path, pair.remainder(), None)?;
        }
    } else if args.out_q.is_some() || args.out_r.is_some() {
        return Err(CliError::usage("this preset has no auxiliary pair"));
    }
    emit_square(&square, args.out.as_deref())?;
    let source = if report.flags.natural {
        TargetSource::Natural
    } else {
        TargetSource::Explicit
    };
    write_report(&report, source, args.report.as_deref())
}

fn write_report(report: &PropertyReport, source: TargetSource, path: Option<&Path>) -> CliResult {
    match path {
        Some(path) => io::write_text(path, &(pretty(&report::report_json(report, source)) + "\n")),
        None => {
            eprint!("{}", report::report_summary(report, source));
            Ok(())
        }
    }
}

fn run_search(args: SearchArgs) -> CliResult {
    let mode = match args.mode {
        ModeArg::Count => SearchMode::Count,
        ModeArg::First => SearchMode::First,
        ModeArg::Stream => SearchMode::Stream,
    };
    let pruning = match args.pruning {
        PruningArg::Full => Pruning::Full,
        PruningArg::SemiMagic => Pruning::SemiMagicOnly,
    };
    let opts = SearchOptions::new(args.order)
        .mode(mode)
        .long_run(args.long_run)
        .workers(args.workers)
        .node_budget(args.budget)
        .symmetry_reduction(args.symmetry)
        .pruning(pruning);
    let mut on_progress = |p: &Progress| eprintln!("{}", report::progress_json(p));
    let mut on_witness = |sq: &Square| outln!("{}", report::witness_json(sq));
    let hooks = Hooks {
        progress: if args.progress {
            Some(&mut on_progress)
        } else {
            None
        },
        sink: Some(&mut on_witness),
    };
    let outcome = search_with(&opts, hooks)?;
    outln!("{}", report::outcome_json(&outcome, mode));
    Ok(())
}

fn run_fixtures(command: FixturesCommand) -> CliResult {
    let corpus = Corpus::from_env()?;
    match command {
        FixturesCommand::List { json } => {
            if json {
                let items: Vec<_> = corpus.entries().iter().map(fixture_meta).collect();
                outln!("{}", pretty(&items.into()));
            } else {
                for e in corpus.entries() {
                    let kind = if e.pair().is_some() { "pair" } else { "square" };
                    outln!("{}\t{kind}\t{}\t{}", e.name, e.order(), e.source);
                }
            }
        }
        FixturesCommand::Show { name, json } => {
            let e = corpus.get(&name)?;
            if json {
                let mut meta = fixture_meta(e);
                match e.payload() {
                    Payload::Square(sq) => meta["cells"] = sq.to_rows().into(),
                    Payload::Pair(p) => {
                        meta["quotient"] = p.quotient().to_rows().into();
                        meta["remainder"] = p.remainder().to_rows().into();
                    }
                }
                outln!("{}", pretty(&meta));
            } else {
                match e.payload() {
                    Payload::Square(sq) => out!("{}", to_csv(sq)),
                    Payload::Pair(p) => {
                        out!("{}\n{}", to_csv(p.quotient()), to_csv(p.remainder()))
                    }
                }
            }
        }
    }
    Ok(())
}

fn fixture_meta(e: &FixtureEntry) -> serde_json::Value {
    json!({
        "name": e.name,
        "kind": if e.pair().is_some() { "pair" } else { "square" },
        "order": e.order(),
        "source": e.source,
        "reconstructed": e.reconstructed,
        "partner": e.partner,
    })
}

fn emit_square(sq: &Square, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => io::write_square(path, sq, None),
        None => {
            out!("{}", to_csv(sq));
            Ok(())
        }
    }
}

/// Writes each half to its file; anything without a file goes to stdout,
/// Q first, separated by a blank line.
fn emit_pair(pair: &AuxPair, out_q: Option<&Path>, out_r: Option<&Path>) -> CliResult {
    let mut stdout = Vec::new();
    for (sq, out) in [(pair.quotient(), out_q), (pair.remainder(), out_r)] {
        match out {
            Some(path) => io::write_square(path, sq, None)?,
            None => stdout.push(to_csv(sq)),
        }
    }
    out!("{}", stdout.join("\n"));
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("plain json")
}
