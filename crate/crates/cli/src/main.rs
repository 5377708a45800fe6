//! `deccsp`: batch analyses, an interactive stepper and the self-test
//! corpus for compensating CSP models.

mod check;
mod commands;
mod repl;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "deccsp", version, about = "Explore compensating CSP models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a model and print it back in canonical form.
    Parse(Common),
    /// Follow one seeded random path from the initial configuration.
    Run(Common),
    /// List every maximal trace within the depth bound.
    Traces(Common),
    /// Print the explored transition system.
    Lts(Common),
    /// Report reachable stuck states.
    Deadlocks(Common),
    /// Traces of the compensations activated by faulty transactions.
    Compensations {
        #[command(flatten)]
        common: Common,
        /// Only paths performing these events in order before the fault.
        #[arg(long, value_delimiter = ',')]
        through: Vec<String>,
    },
    /// Step through transitions interactively.
    Step {
        #[command(flatten)]
        common: Common,
        /// Comma-separated commands to run instead of reading a terminal.
        #[arg(long)]
        replay: Option<String>,
    },
    /// Run the bundled corpus against its golden files.
    Check {
        /// Corpus directory.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Record missing or changed command goldens.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    pub model: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub depth: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_states: usize,
    /// Override the model's fault mode.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub interruptible_atoms: bool,
    /// Retrieve unassigned process variables as SKIP.
    #[arg(long)]
    pub default_skip_vars: bool,
    #[arg(long)]
    pub elide_tau: bool,
    /// Also write the transition system as DOT.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Contain,
    Propagate,
}

/// A failed command: exit status and message.
#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub msg: String,
}

impl Fail {
    pub fn new(code: u8, msg: impl Into<String>) -> Self {
        Fail { code, msg: msg.into() }
    }
}

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_SEMANTIC: u8 = 2;
pub const EXIT_NOT_TTY: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Step { common, replay: None } => repl::run(&common),
        Command::Check { corpus, bless } => check::run(corpus, bless),
        other => commands::execute(&other).map(|out| print!("{out}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("deccsp: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
