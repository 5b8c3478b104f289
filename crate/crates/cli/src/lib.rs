//! `passnim` command-line front end.
//!
//! Exit codes: 0 success, 1 verification or cross-check failure, 2 usage or
//! parse error, 3 resource limit or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use passnim_core::expr::{format_game, parse_expr, ParseError};
use passnim_core::nim_pass::{cross_check_three_pile, three_pile_ppos_direct, three_pile_ppos_ner, GrundyTable, NimPassSolver, Triple};
use passnim_core::report::VerificationReport;
use passnim_core::verify::{run_suite, Check, GenConfig, SuiteConfig, VerifyError};
use passnim_core::{Arena, GameError, Limits, Solver};
use serde::Serialize;

pub const MAX_NODES_ENV: &str = "PASSNIM_MAX_NODES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "passnim", version, about = "Impartial games with a pass: values, tables and law checks")]
pub struct Cli {
    /// Machine-readable output for grundy/outcome/moves.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grundy value of a game expression.
    Grundy { expr: String },
    /// P or N.
    Outcome { expr: String },
    /// Options that are P-positions, one expression per line.
    Moves { expr: String },
    /// Two-pile Grundy table of Nim with a pass.
    Table {
        kind: TableKind,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three-pile P-positions of Nim with a pass.
    Ppos {
        kind: PposKind,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run law checks (a check name or `all`) and write a JSON report.
    Verify {
        selection: String,
        #[arg(long, default_value_t = 3)]
        exhaustive_birthday: u32,
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Birthday cap for random forms.
        #[arg(long, default_value_t = 5)]
        random_birthday: u32,
        #[arg(long, default_value_t = 3)]
        max_options: u32,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    TwoPass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PposKind {
    ThreePass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ner,
    Direct,
    Both,
}

/// Error carrying its exit code; the message goes to stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        let code = match e {
            GameError::ResourceLimit { .. } => EXIT_RESOURCE,
            GameError::UnknownId(_) => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Game(g) => g.into(),
            other => Failure::new(EXIT_USAGE, other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_RESOURCE, e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn main_with<I, T>(args: I, env_max_nodes: Option<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let limits = match limits_from_env(env_max_nodes.as_deref()) {
        Ok(l) => l,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    match run(&cli, limits, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn limits_from_env(value: Option<&str>) -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Some(v) = value {
        limits.max_nodes = v
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_USAGE, format!("{MAX_NODES_ENV} must be a node count, got {v:?}")))?;
    }
    Ok(limits)
}

pub fn run(cli: &Cli, limits: Limits, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Grundy { expr } => query(expr, Query::Grundy, cli.json, limits, stdout),
        Command::Outcome { expr } => query(expr, Query::Outcome, cli.json, limits, stdout),
        Command::Moves { expr } => query(expr, Query::Moves, cli.json, limits, stdout),
        Command::Table { kind: TableKind::TwoPass, max, format, out } => {
            check_table_size(*max, limits)?;
            let table = NimPassSolver::new().two_pile_table(*max);
            let text = match format {
                Format::Csv => table_csv(&table),
                Format::Json => table_json(&table),
            };
            emit(out.as_ref(), &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Ppos { kind: PposKind::ThreePass, max, method, format, out } => {
            check_table_size(*max, limits)?;
            let mut solver = NimPassSolver::new();
            let mut code = EXIT_OK;
            let triples = match method {
                Method::Ner => three_pile_ppos_ner(&mut solver, *max),
                Method::Direct => three_pile_ppos_direct(&mut solver, *max),
                Method::Both => {
                    let report = cross_check_three_pile(*max);
                    if !report.passed() {
                        writeln!(stderr, "three-pile cross-check failed:")?;
                        for f in &report.failures {
                            writeln!(stderr, "  {} table says {}, search says {}", f.inputs[0], f.expected, f.actual)?;
                        }
                        code = EXIT_FAILED;
                    }
                    three_pile_ppos_direct(&mut solver, *max)
                }
            };
            let triples: Vec<Triple> = triples.into_iter().collect();
            let text = match format {
                Format::Csv => triples_csv(&triples),
                Format::Json => triples_json(*max, *method, &triples),
            };
            emit(out.as_ref(), &text, stdout)?;
            Ok(code)
        }
        Command::Verify { selection, exhaustive_birthday, samples, seed, random_birthday, max_options, report } => {
            let checks = Check::parse_selection(selection)?;
            let cfg = SuiteConfig {
                exhaustive_birthday: *exhaustive_birthday,
                gen: GenConfig {
                    max_birthday: *random_birthday,
                    max_options: *max_options,
                    samples: *samples,
                    seed: *seed,
                },
                limits,
                ..SuiteConfig::default()
            };
            let reports = run_suite(&checks, &cfg)?;
            for r in &reports {
                writeln!(stderr, "{}", summary_line(r))?;
            }
            let mut text = serde_json::to_string_pretty(&reports).expect("reports serialize");
            text.push('\n');
            emit(report.as_ref(), &text, stdout)?;
            Ok(if reports.iter().all(VerificationReport::passed) { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn check_table_size(max: u32, limits: Limits) -> Result<(), Failure> {
    let n = max as u64 + 1;
    if n * (n + 1) / 2 > limits.max_nodes as u64 {
        return Err(GameError::ResourceLimit { what: "table states", limit: limits.max_nodes as u64 }.into());
    }
    Ok(())
}

fn emit(out: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn summary_line(r: &VerificationReport) -> String {
    format!(
        "{} {} ({:?}) cases={} failures={} excluded={} {}ms",
        if r.passed() { "PASS" } else { "FAIL" },
        r.theorem,
        r.mode,
        r.cases,
        r.failures.len(),
        r.excluded.len(),
        r.elapsed_ms
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Query {
    Grundy,
    Outcome,
    Moves,
}

#[derive(Debug, Serialize)]
pub struct QueryJson {
    pub expr: String,
    pub grundy: u32,
    pub outcome: String,
    pub winning_moves: Vec<String>,
}

fn query(text: &str, what: Query, json: bool, limits: Limits, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let expr = parse_expr(text)?;
    let mut arena = Arena::with_limits(limits);
    let mut solver = Solver::new();
    let g = expr.eval(&mut arena)?;
    let grundy = solver.grundy(&arena, g);
    let outcome = solver.outcome(&arena, g);
    let moves: Vec<String> = solver.winning_moves(&arena, g).into_iter().map(|m| format_game(&arena, m)).collect();
    if json {
        let out = QueryJson { expr: expr.to_string(), grundy, outcome: outcome.to_string(), winning_moves: moves };
        writeln!(stdout, "{}", serde_json::to_string(&out).expect("query output serializes"))?;
        return Ok(EXIT_OK);
    }
    match what {
        Query::Grundy => writeln!(stdout, "{grundy}")?,
        Query::Outcome => writeln!(stdout, "{outcome}")?,
        Query::Moves => {
            for m in moves {
                writeln!(stdout, "{m}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn table_csv(table: &GrundyTable) -> String {
    let mut out = String::from("a,b,grundy\n");
    for (a, b, g) in table.entries() {
        out.push_str(&format!("{a},{b},{g}\n"));
    }
    out
}

#[derive(Serialize)]
struct TableEntry {
    a: u32,
    b: u32,
    grundy: u32,
}

#[derive(Serialize)]
struct TableJson {
    max: u32,
    entries: Vec<TableEntry>,
}

pub fn table_json(table: &GrundyTable) -> String {
    let doc = TableJson {
        max: table.max(),
        entries: table.entries().map(|(a, b, grundy)| TableEntry { a, b, grundy }).collect(),
    };
    serde_json::to_string(&doc).expect("table serializes") + "\n"
}

pub fn triples_csv(triples: &[Triple]) -> String {
    let mut out = String::from("a,b,c\n");
    for [a, b, c] in triples {
        out.push_str(&format!("{a},{b},{c}\n"));
    }
    out
}

#[derive(Serialize)]
struct TriplesJson<'a> {
    max: u32,
    method: Method,
    triples: &'a [Triple],
}

pub fn triples_json(max: u32, method: Method, triples: &[Triple]) -> String {
    serde_json::to_string(&TriplesJson { max, method, triples }).expect("triples serialize") + "\n"
}
