//! The `dyerlashof` command line: argument parsing, the commands, and their reports.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dyerlashof::coverings::ComposeFn;
use serde_json::Value;

pub use commands::LawChoice;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dyerlashof", version, about = "Exact checks and tables for formal group laws, D-rings and Dyer-Lashof operations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Truncation or degree bound, overriding the command default.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub trunc: Option<u32>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Formal group laws and their Lubin quotients.
    #[command(subcommand)]
    Fgl(FglCommand),
    /// The order-two Lazard ring.
    #[command(subcommand)]
    Lazard(LazardCommand),
    /// Dyer-Lashof operations and D-ring relations.
    #[command(subcommand)]
    Dl(DlCommand),
    /// The polynomial-functor calculus of finite coverings.
    #[command(subcommand)]
    Cover(CoverCommand),
}

#[derive(Args, Debug, Clone)]
pub struct LawArgs {
    /// `additive` or `lazard:D` for the universal law exact through degree D.
    #[arg(long, default_value = "additive", value_parser = commands::parse_law)]
    pub law: LawChoice,
}

#[derive(Subcommand, Debug)]
pub enum FglCommand {
    /// Validate the law's axioms.
    Check(LawArgs),
    /// Quotient by {0, t}.
    Lubin(LawArgs),
    /// Quotient by {0, t} and then by {0, s}, with closed-form and symmetry checks.
    Iterate(LawArgs),
}

#[derive(Subcommand, Debug)]
pub enum LazardCommand {
    /// Graded ranks in degrees 0 through --max.
    Dims {
        #[arg(long, default_value_t = 6)]
        max: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum DlCommand {
    /// Normal form of the composite q_{m_1} ... q_{m_k}.
    Adem {
        #[arg(required = true, num_args = 1..)]
        indices: Vec<u32>,
    },
    /// Rules for q_m q_n with m + n <= --max derived from the symmetry axiom.
    Derive {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
    },
    /// The table q_n(b_k) for n <= --max-n and k <= --max-k.
    Priddy {
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        #[arg(long, default_value_t = 2)]
        max_k: u32,
    },
    /// The d-to-q and q-to-d matrices up to index --max.
    BasisChange {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCommand {
    /// Randomized checks of the covering laws and the splitting identity.
    Selftest {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        max_size: u64,
    },
}

/// What a command produced: the exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Replaceable internals, for exercising the failure paths.
#[derive(Default)]
pub struct Hooks<'a> {
    pub compose: Option<&'a ComposeFn<'a>>,
}

/// A finished check: its JSON form, its text form and the verdict.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &Hooks::default())
}

pub fn run_with<I, T>(args: I, hooks: &Hooks<'_>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let report = match commands::execute(&cli, hooks) {
        Ok(r) => r,
        Err(commands::CommandError::Usage(msg)) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let mut body = match cli.format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable"),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    let code = if report.passed { EXIT_PASS } else { EXIT_FAIL };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}
