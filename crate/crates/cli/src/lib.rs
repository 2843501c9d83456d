//! Command-line front end: argument parsing, configuration, file I/O and
//! report output for the `indlab` library.

pub mod commands;
pub mod config;
pub mod format;
pub mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;

use crate::config::FileConfig;
use crate::report::{to_csv, to_table, unix_ms, Report, Timestamps, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl From<format::FormatError> for CliError {
    fn from(e: format::FormatError) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Parser)]
#[command(name = "indlab", version, about = "Induced copies of rainbow patterns in edge-colored complete graphs")]
pub struct Cli {
    /// Worker threads (falls back to INDLAB_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// File of `key = value` lines supplying defaults for flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Format printed on stdout; JSON is written to --out-dir regardless.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Directory receiving `<command>.json` (and the chosen view).
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    /// Add wall-clock timestamps and timings; reports are then not reproducible.
    #[arg(long, global = true)]
    pub timestamps: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count induced copies and per-vertex role statistics.
    Count(CountArgs),
    /// Build an iterated or separate blow-up and count it.
    Blowup(BlowupArgs),
    /// Split copies by role partition and check the degree bounds.
    Audit(AuditArgs),
    /// Local search, exhaustive search, or a blow-up comparison.
    Search(SearchArgs),
    /// Run the inequality battery and the partition-product grid checks.
    Verify(VerifyArgs),
    /// Largest product of `t` non-negative integers summing to `q`.
    Exact(ExactArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_name = "FILE")]
    pub pattern: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Iterated,
    Separate,
}

#[derive(Debug, Args)]
pub struct BlowupArgs {
    #[arg(long, value_name = "FILE")]
    pub pattern: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "iterated")]
    pub family: Family,
    /// Write the realized graph here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, value_name = "FILE")]
    pub pattern: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Comma-separated 1-based part of every host vertex; default is the
    /// partition by largest role neighbourhood.
    #[arg(long, value_name = "LIST")]
    pub partition: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    Hillclimb,
    Exact,
    BeatBlowup,
}

impl std::str::FromStr for SearchMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    First,
    Steepest,
}

impl std::str::FromStr for StrategyArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_name = "FILE")]
    pub pattern: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Move evaluations (hillclimb, beat-blowup) or colorings generated (exact).
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum)]
    pub mode: Option<SearchMode>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Disable symmetrization steps.
    #[arg(long)]
    pub no_zykov: bool,
    /// Write the best graph found here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub kmin: Option<usize>,
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Bound on q and t for the partition-product grid checks.
    #[arg(long)]
    pub grid: Option<u64>,
    /// Dyadic precision of interval enclosures.
    #[arg(long)]
    pub bits: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub t: u64,
}

/// What a command produced: the payload, which array holds its records, any
/// files to write, and the exit code.
pub struct Outcome {
    pub payload: Value,
    pub rows: Option<&'static str>,
    pub config: BTreeMap<String, Value>,
    pub exit: i32,
}

/// Resolved global settings.
pub struct Context {
    pub file: FileConfig,
    pub timestamps: bool,
}

fn resolve_threads(cli: Option<usize>, file: &FileConfig) -> Result<usize, CliError> {
    if let Some(t) = file.pick("threads", cli)? {
        return Ok(t);
    }
    match std::env::var("INDLAB_THREADS") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Validation(format!("INDLAB_THREADS: bad value `{v}`"))),
        Err(_) => Ok(0),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count(_) => "count",
        Command::Blowup(_) => "blowup",
        Command::Audit(_) => "audit",
        Command::Search(_) => "search",
        Command::Verify(_) => "verify",
        Command::Exact(_) => "exact",
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let format = file.pick_or("format", cli.format, OutputFormat::Json)?;
    let out_dir: Option<PathBuf> = file.pick("out-dir", cli.out_dir.clone())?;
    let timestamps = cli.timestamps || file.pick_or("timestamps", None, false)?;
    let threads = resolve_threads(cli.threads, &file)?;
    if let Some(d) = &out_dir {
        std::fs::create_dir_all(d).map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
    }
    let name = command_name(&cli.command);
    let ctx = Context { file, timestamps };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let started = unix_ms();
    let outcome = pool.install(|| commands::dispatch(&cli.command, &ctx))?;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command: name.to_string(),
        config: outcome.config,
        timestamps: timestamps.then(|| Timestamps { started_unix_ms: started, finished_unix_ms: unix_ms() }),
        payload: outcome.payload,
    };
    let json = report.to_json();
    let view = match format {
        OutputFormat::Json => json.clone(),
        OutputFormat::Csv => to_csv(&report.payload, outcome.rows),
        OutputFormat::Table => to_table(&report.payload, outcome.rows),
    };
    if let Some(d) = &out_dir {
        write_file(&d.join(format!("{name}.json")), &json)?;
        match format {
            OutputFormat::Json => {}
            OutputFormat::Csv => write_file(&d.join(format!("{name}.csv")), &view)?,
            OutputFormat::Table => write_file(&d.join(format!("{name}.txt")), &view)?,
        }
    }
    stdout.write_all(view.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(outcome.exit)
}

/// Runs one command line (program name first) and returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_VALIDATION
                }
            };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_VALIDATION
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
