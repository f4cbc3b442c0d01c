//! Command-line front end for `chaintree`: counting, oracle checks,
//! recognition, generation and benchmarking.

pub mod commands;
pub mod input;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::{RunReport, Status};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Rejected(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::InputError,
            CliError::Rejected(_) => Status::Rejected,
            CliError::Mismatch(_) => Status::Mismatch,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "chaintree", version, about = "Exact spanning-tree counts for double nested graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count spanning trees with the linear-time counter.
    Count(SourceArgs),
    /// Count spanning trees with the Kirchhoff cofactor oracle (any graph).
    Oracle(SourceArgs),
    /// Compare the counter with the oracle over a sweep of specs.
    Verify(VerifyArgs),
    /// Recover the canonical spec of an edge-list file.
    Recognize(RecognizeArgs),
    /// Write the canonical edge list of a spec.
    Generate(GenerateArgs),
    /// Time the counter (and the oracle on small sizes) and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["spec", "edges"]))]
pub struct SourceArgs {
    /// Spec as JSON, as `m=1,1;n=2,2`, or a file holding either.
    #[arg(long)]
    pub spec: Option<String>,
    /// Edge-list file, one `u v` pair per line.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub max_h: usize,
    #[arg(long, default_value_t = 3)]
    pub max_cell: usize,
    /// Additional random specs.
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertex budget for random specs.
    #[arg(long, default_value_t = 60)]
    pub max_vertices: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub spec: String,
    /// Destination file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyChoice {
    Unicyclic,
    Balanced,
    All,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated vertex counts, each at least 5.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
    pub sizes: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub repetitions: usize,
    /// CSV destination, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub csv: String,
    #[arg(long, value_enum, default_value_t = FamilyChoice::Unicyclic)]
    pub family: FamilyChoice,
    /// Largest size at which the oracle also runs.
    #[arg(long, default_value_t = 400)]
    pub oracle_max: usize,
    #[arg(long)]
    pub json: bool,
}

/// What a successful command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    /// Standard output in plain mode.
    pub plain: String,
    pub result: String,
    pub ops: Option<u64>,
    pub message: Option<String>,
}

impl Output {
    pub fn new(plain: String, result: String) -> Self {
        Output { plain, result, ops: None, message: None }
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count(_) => "count",
            Command::Oracle(_) => "oracle",
            Command::Verify(_) => "verify",
            Command::Recognize(_) => "recognize",
            Command::Generate(_) => "generate",
            Command::Bench(_) => "bench",
        }
    }

    fn json(&self) -> bool {
        match self {
            Command::Count(a) | Command::Oracle(a) => a.json,
            Command::Verify(a) => a.json,
            Command::Recognize(a) => a.json,
            Command::Generate(a) => a.json,
            Command::Bench(a) => a.json,
        }
    }

    fn input(&self) -> String {
        match self {
            Command::Count(a) | Command::Oracle(a) => match (&a.spec, &a.edges) {
                (Some(s), _) => format!("spec {s}"),
                (None, Some(p)) => format!("edges {}", p.display()),
                (None, None) => String::new(),
            },
            Command::Verify(a) => format!(
                "max_h={} max_cell={} trials={} seed={} max_vertices={}",
                a.max_h, a.max_cell, a.trials, a.seed, a.max_vertices
            ),
            Command::Recognize(a) => a.file.display().to_string(),
            Command::Generate(a) => format!("spec {} -> {}", a.spec, a.output),
            Command::Bench(a) => format!("sizes {} family {:?}", a.sizes.join(","), a.family),
        }
    }
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Count(a) => commands::count(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Verify(a) => commands::verify(a),
        Command::Recognize(a) => commands::recognize(a),
        Command::Generate(a) => commands::generate(a),
        Command::Bench(a) => commands::bench(a),
    }
}

/// Runs a parsed command, writes its output streams and returns the exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let start = Instant::now();
    let json = cli.command.json();
    let result = execute(&cli.command);
    let wall_ns = start.elapsed().as_nanos().min(u64::MAX as u128) as u64;
    let (status, written) = match result {
        Ok(out) => {
            let text = if json {
                let mut report = RunReport::success(cli.command.name(), cli.command.input(), out.result);
                report.wall_ns = wall_ns;
                report.ops = out.ops;
                report.message = out.message;
                format!("{}\n", report.to_json())
            } else {
                out.plain
            };
            (Status::Success, stdout.write_all(text.as_bytes()))
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            let written = if json {
                let mut report =
                    RunReport::failure(cli.command.name(), cli.command.input(), err.status(), err.to_string());
                report.wall_ns = wall_ns;
                writeln!(stdout, "{}", report.to_json())
            } else {
                Ok(())
            };
            (err.status(), written)
        }
    };
    if written.and_then(|_| stdout.flush()).is_err() {
        return Status::InputError.exit_code();
    }
    status.exit_code()
}
