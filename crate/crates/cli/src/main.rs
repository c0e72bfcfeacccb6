//! Command-line front end: words, families, identity systems, lattices, and
//! Cayley tables, with JSON and DOT output.
//!
//! Exit codes: 0 success (or positive answer), 1 negative answer, 2 input
//! error, 3 resource limit (budget or generation ceiling).

mod cmd_epigroup;
mod cmd_family;
mod cmd_lattice;
mod cmd_variety;
mod cmd_words;
mod manifest;
mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "epilat",
    version,
    about = "Words, anti-chains, 0-reduced identity systems, lattices, and finite semigroups"
)]
struct Cli {
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    json_out: Option<PathBuf>,

    /// Write a reproducibility manifest (parameters, input digests, output
    /// paths) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,

    /// Node budget for applicability searches; exceeding it exits 3.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Accepted for interface stability: every command is deterministic and
    /// uses no randomness.
    #[arg(long, global = true)]
    seed_free: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a pattern word is applicable to a target word.
    Applicable {
        /// Pattern word, e.g. "xx" or "0,0".
        pattern: String,
        /// Target word, e.g. "abab".
        target: String,
    },
    /// Check a word for squares or enumerate square-free words.
    #[command(subcommand)]
    Squarefree(cmd_words::SquarefreeCmd),
    /// Generate or verify square-free anti-chain families.
    #[command(subcommand)]
    Family(cmd_family::FamilyCmd),
    /// Build, compare, and explore 0-reduced identity systems.
    #[command(subcommand)]
    Variety(cmd_variety::VarietyCmd),
    /// Analyze finite lattices and partition lattices.
    #[command(subcommand)]
    Lattice(cmd_lattice::LatticeCmd),
    /// Analyze finite semigroups given by Cayley tables.
    #[command(subcommand)]
    Epigroup(cmd_epigroup::EpigroupCmd),
}

/// A finished command: exit code 0 or 1 plus its primary output.
pub struct Outcome {
    pub exit: i32,
    pub output: Output,
    pub summary: Option<String>,
}

pub enum Output {
    Json(serde_json::Value),
    Text(String),
}

impl Outcome {
    pub fn json(exit: i32, value: serde_json::Value) -> Self {
        Outcome {
            exit,
            output: Output::Json(value),
            summary: None,
        }
    }

    pub fn with_summary(mut self, summary: impl Into<String>) -> Self {
        self.summary = Some(summary.into());
        self
    }
}

/// Failures with dedicated exit codes: input errors exit 2, resource limits
/// exit 3.
pub enum Failure {
    Input(String),
    /// Input error with machine-readable detail (e.g. a violating triple).
    InputDetailed(String, serde_json::Value),
    Resource(String),
}

impl Failure {
    fn exit(&self) -> i32 {
        match self {
            Failure::Input(_) | Failure::InputDetailed(..) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::InputDetailed(m, _) | Failure::Resource(m) => m,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Failure::InputDetailed(m, details) => {
                serde_json::json!({ "error": m, "details": details })
            }
            other => serde_json::json!({ "error": other.message() }),
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

fn run(cli: &Cli, manifest: &mut RunManifest) -> CmdResult {
    match &cli.command {
        Command::Applicable { pattern, target } => {
            cmd_words::applicable(pattern, target, cli.budget, manifest)
        }
        Command::Squarefree(cmd) => cmd_words::squarefree(cmd, manifest),
        Command::Family(cmd) => cmd_family::run(cmd, manifest),
        Command::Variety(cmd) => cmd_variety::run(cmd, manifest),
        Command::Lattice(cmd) => cmd_lattice::run(cmd, manifest),
        Command::Epigroup(cmd) => cmd_epigroup::run(cmd, manifest),
    }
}

fn write_output(cli: &Cli, output: &Output, manifest: &mut RunManifest) -> std::io::Result<()> {
    let rendered = match output {
        Output::Json(value) => format!(
            "{}\n",
            serde_json::to_string_pretty(value).expect("serializable")
        ),
        Output::Text(text) => text.clone(),
    };
    match &cli.json_out {
        Some(path) => {
            std::fs::write(path, rendered)?;
            manifest.record_output(path);
        }
        None => {
            std::io::stdout().write_all(rendered.as_bytes())?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let mut manifest = RunManifest::new(env!("CARGO_PKG_VERSION"));
    if cli.seed_free {
        manifest.record_param("seed_free", "true");
    }
    if let Some(b) = cli.budget {
        manifest.record_param("budget", b.to_string());
    }

    let code = match run(&cli, &mut manifest) {
        Ok(outcome) => {
            if let Err(e) = write_output(&cli, &outcome.output, &mut manifest) {
                eprintln!("error: failed to write output: {e}");
                std::process::exit(2);
            }
            if let Some(summary) = &outcome.summary {
                eprintln!("{summary}");
            }
            outcome.exit
        }
        Err(failure) => {
            let output = Output::Json(failure.to_json());
            if write_output(&cli, &output, &mut manifest).is_err() {
                // fall through; the exit code still reports the failure
            }
            eprintln!("error: {}", failure.message());
            failure.exit()
        }
    };

    if let Some(path) = &cli.manifest {
        if let Err(e) = manifest.write(path) {
            eprintln!("error: failed to write manifest: {e}");
            std::process::exit(2);
        }
    }
    std::process::exit(code);
}
