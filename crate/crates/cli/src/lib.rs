//! Command-line front end: argument parsing, dispatch and reporting.

mod commands;
mod load;
mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use textile_core::{Error, Side};

pub use report::{Report, Timing};

#[derive(Parser, Debug)]
#[command(name = "textile", version, about = "Two-dimensional shifts of finite type as textile systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on enumerated objects (blocks, strips, tilings).
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MorphismArg {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Source,
    Range,
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|_| format!("side must be A or B, not `{s}`"))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every object in a file, or one of them.
    Validate {
        file: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// Emit the dual of a textile system.
    Dual {
        file: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// List or count the admissible M x N blocks (M wide, N tall).
    Blocks {
        file: String,
        #[arg(long)]
        object: Option<String>,
        m: usize,
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Emit the textile system T(M, N) of a shift.
    TextileOf {
        file: String,
        #[arg(long)]
        object: Option<String>,
        m: usize,
        n: usize,
        /// Build the dual system on horizontal strips instead.
        #[arg(long)]
        dual: bool,
    },
    /// Strip tower of a shift.
    Tower {
        file: String,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_parser = parse_side, default_value = "A")]
        side: Side,
        #[arg(long)]
        levels: usize,
        /// Compare every level with a direct enumeration of strips.
        #[arg(long)]
        oracle: bool,
    },
    /// K-theory, flags and tag of the graph algebra of a tower level.
    Invariants {
        file: String,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_parser = parse_side, default_value = "A")]
        side: Side,
        #[arg(long)]
        level: usize,
    },
    /// Path lifting of p and q; for a shift, of T(2, 2) with a corner cross-check.
    CheckLifting {
        file: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// Count the lifts of a path of H.
    CountLifts {
        file: String,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum)]
        morphism: MorphismArg,
        /// Comma-separated edges of H; may be empty with --anchor.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        path: Vec<String>,
        #[arg(long, value_enum, default_value_t = DirectionArg::Source)]
        direction: DirectionArg,
        /// Vertex of H the lifts are anchored over.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Commutation and unique factorization.
    Rank2Check {
        file: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// Tile a W x H rectangle by backtracking.
    Tile {
        file: String,
        #[arg(long)]
        object: Option<String>,
        w: usize,
        h: usize,
        #[arg(long, conflicts_with = "all")]
        witness: bool,
        #[arg(long)]
        all: bool,
    },
    /// Block counts of n x n squares and log2(count) / n^2.
    Entropy {
        file: String,
        #[arg(long)]
        object: Option<String>,
        #[arg(long)]
        max_n: usize,
    },
    /// List the built-in examples, describe one, or print its source.
    Example {
        name: Option<String>,
        #[arg(long)]
        emit: bool,
    },
}

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(e) if e.is_input_error() => 2,
            Failure::Core(_) | Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// A successful command: payload, human-readable text and exit code.
pub(crate) struct Done {
    pub result: serde_json::Value,
    pub text: String,
    pub notes: Vec<String>,
    pub code: i32,
    /// The text is input-format source, printed verbatim with notes as comments.
    pub raw: bool,
}

impl Done {
    fn new(result: serde_json::Value, text: String) -> Self {
        Done {
            result,
            text,
            notes: Vec::new(),
            code: 0,
            raw: false,
        }
    }
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let outcome = commands::execute(&cli);
    let timing = Timing {
        elapsed_us: start.elapsed().as_micros() as u64,
    };
    match outcome {
        Ok(done) => {
            let stdout = match cli.format {
                Format::Json => {
                    let report = Report {
                        command,
                        result: done.result,
                        notes: done.notes,
                        timing,
                    };
                    report.to_json() + "\n"
                }
                Format::Text => {
                    let mut out = done.text;
                    if !out.is_empty() && !out.ends_with('\n') {
                        out.push('\n');
                    }
                    let prefix = if done.raw { "# note: " } else { "note: " };
                    for n in &done.notes {
                        out.push_str(prefix);
                        out.push_str(n);
                        out.push('\n');
                    }
                    out
                }
            };
            Outcome {
                code: done.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let code = f.exit_code();
            let message = f.message();
            let stdout = match cli.format {
                Format::Json => {
                    let report = Report {
                        command,
                        result: json!({ "error": message, "exit_code": code }),
                        notes: Vec::new(),
                        timing,
                    };
                    report.to_json() + "\n"
                }
                Format::Text => String::new(),
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {message}\n"),
            }
        }
    }
}
