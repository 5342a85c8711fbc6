//! `qtopos`: batch front end for the context-poset library.
//!
//! Every subcommand reads JSON inputs, runs one pipeline and writes a single
//! report (JSON by default) to stdout or `--out`. Domain errors exit with
//! status 1 and a JSON error object on stderr; usage errors exit with 2.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "qtopos", version, about = "Context posets, daseinisation, sieve-valued truth and Kochen-Specker checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Numerical tolerance used throughout
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps: f64,

    /// Add the trivial context {0, 1} to the poset
    #[arg(long, global = true)]
    pub include_trivial: bool,

    /// Do not close the input contexts under intersection
    #[arg(long, global = true)]
    pub no_closure: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

/// Where the contexts come from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ContextSource {
    /// Ray-family JSON: {"dim", "contexts": [[vector, ...], ...]}
    #[arg(long)]
    pub rays: Option<PathBuf>,

    /// Operator-pool JSON: {"dim", "pools": [[matrix, ...], ...]}
    #[arg(long)]
    pub pools: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DaseinInput {
    /// Projection matrix JSON
    #[arg(long)]
    pub projection: Option<PathBuf>,

    /// Hermitian operator matrix JSON
    #[arg(long)]
    pub op: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArrowModeArg {
    Outer,
    Inner,
    Paired,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the context poset and export it
    Contexts {
        #[command(flatten)]
        source: ContextSource,
    },
    /// Daseinise a projection or an operator into every context
    Dasein {
        #[command(flatten)]
        source: ContextSource,
        #[command(flatten)]
        input: DaseinInput,
    },
    /// Represent the proposition "A ∈ Δ" as a sub-object of the spectral presheaf
    Proposition {
        #[command(flatten)]
        source: ContextSource,
        #[arg(long)]
        op: PathBuf,
        /// Borel set, e.g. "[1,1]" or "(-inf,0) ∪ [2,3]"
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Truth value of "A ∈ Δ" in the state ψ
    Truth {
        #[command(flatten)]
        source: ContextSource,
        /// State vector as inline JSON ("[1,0]", "[[0.6,0],[0,0.8]]") or a file
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Rescale ψ to unit norm instead of rejecting it
        #[arg(long)]
        normalize: bool,
    },
    /// Tabulate the quantity arrow of an operator
    Arrow {
        #[command(flatten)]
        source: ContextSource,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_enum, default_value_t = ArrowModeArg::Paired)]
        mode: ArrowModeArg,
    },
    /// Search for global sections of the spectral presheaf
    Ks {
        #[command(flatten)]
        source: ContextSource,
        /// Stop after this many sections
        #[arg(long, default_value_t = qtopos::ks::DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Propositional language tools
    Pl {
        #[command(subcommand)]
        command: PlCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlCommand {
    /// Evaluate a sentence classically or in a sieve algebra
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        sentence: String,
        /// {"p0": true, ...}, or with --heyting {"base": name, "atoms": {"p0": [names]}}
        #[arg(long)]
        valuation: PathBuf,
        /// Abstract poset JSON {"elements", "leq"}; switches to sieve-valued evaluation
        #[arg(long)]
        heyting: Option<PathBuf>,
    },
}

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or inputs that cannot be read: exit 2.
    Usage(String),
    /// Error raised by the library while running the named module: exit 1.
    Domain { module: &'static str, error: qtopos::Error },
    /// Output could not be written: exit 1.
    Io(String),
}

impl From<qtopos::Error> for Failure {
    fn from(error: qtopos::Error) -> Self {
        Failure::Domain { module: error.module(), error }
    }
}

/// Attributes a library error to the pipeline stage that raised it.
pub trait Within<T> {
    fn within(self, module: &'static str) -> Result<T, Failure>;
}

impl<T> Within<T> for qtopos::Result<T> {
    fn within(self, module: &'static str) -> Result<T, Failure> {
        self.map_err(|error| Failure::Domain { module, error })
    }
}

fn error_json(module: &str, kind: &str, message: &str, keys: Vec<String>) -> String {
    json!({ "module": module, "kind": kind, "message": message, "context_keys": keys }).to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.eps > 0.0 && cli.eps.is_finite()) {
        Cli::command().error(clap::error::ErrorKind::ValueValidation, "--eps must be a positive number").exit();
    }
    let output = commands::run(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match output {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => Cli::command().error(clap::error::ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Domain { module, error: e }) => {
            eprintln!("{}", error_json(module, e.kind(), &e.to_string(), e.context_keys()));
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("{}", error_json("cli", "io", &msg, Vec::new()));
            ExitCode::from(1)
        }
    }
}
