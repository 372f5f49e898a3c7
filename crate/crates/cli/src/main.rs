//! `glab`: exhaustive checks on group algebras over finite rings.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
//! 3 scale error.

mod commands;
mod expr;
mod instance;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use glab_core::galg::{DEFAULT_CENSUS_BOUND, DEFAULT_OP_BOUND};
use glab_core::{Bounds, GlabError};

use instance::{EvalError, Instance};
use report::Format;

#[derive(Parser)]
#[command(
    name = "glab",
    version,
    about = "Exhaustive checks on group algebras over finite rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest |RG| for element-set operations.
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Largest |RG| for full ideal enumeration.
    #[arg(long, global = true)]
    census_bound: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "tsv")]
    format: Format,

    /// Fill the micros column (output is no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Units, radical, locality and the Frobenius decision for the ring.
    RingInfo { file: PathBuf },
    /// All idempotents and a decomposition of 1 into primitives.
    Idempotents { file: PathBuf },
    /// Linear complementary pairs.
    Lcp {
        #[arg(value_enum)]
        mode: LcpMode,
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["C", "D"])]
        pair: Option<Vec<String>>,
    },
    /// Checkability of one ideal, or of every right ideal.
    Checkable {
        #[arg(value_enum)]
        mode: CheckMode,
        file: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Every identity check on the instance.
    VerifyAll { file: PathBuf },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum LcpMode {
    Scan,
    Verify,
    Residue,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum CheckMode {
    Ideal,
    Census,
}

fn file_of(c: &Command) -> &PathBuf {
    match c {
        Command::RingInfo { file }
        | Command::Idempotents { file }
        | Command::Lcp { file, .. }
        | Command::Checkable { file, .. }
        | Command::VerifyAll { file } => file,
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("glab: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let path = file_of(&cli.command);
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return fail(2, format!("{}: {e}", path.display())),
    };
    let inst = match Instance::parse(&source) {
        Ok(i) => i,
        Err(e) => return fail(2, format!("{}: {e}", path.display())),
    };
    let bounds = Bounds {
        op: cli.bound.or(inst.bound).unwrap_or(DEFAULT_OP_BOUND),
        census: cli
            .census_bound
            .or(inst.census_bound)
            .unwrap_or(DEFAULT_CENSUS_BOUND),
    };
    let result = match &cli.command {
        Command::RingInfo { .. } => commands::ring_info(&inst),
        Command::Idempotents { .. } => commands::idempotents(&inst, bounds),
        Command::Lcp { mode, pair, .. } => match mode {
            LcpMode::Scan => commands::lcp_scan(&inst, bounds),
            LcpMode::Verify => commands::lcp_verify(&inst, bounds, pair),
            LcpMode::Residue => commands::lcp_residue(&inst, bounds, pair),
        },
        Command::Checkable { mode, ideal, .. } => match mode {
            CheckMode::Ideal => commands::checkable_ideal(&inst, bounds, ideal),
            CheckMode::Census => commands::checkable_census(&inst, bounds),
        },
        Command::VerifyAll { .. } => commands::verify_all(&inst, bounds),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format, cli.timing));
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(EvalError::Usage(msg)) => fail(2, msg),
        Err(EvalError::Core(e @ GlabError::Scale { .. })) => fail(3, e),
        Err(EvalError::Core(e @ GlabError::Falsified { .. })) => {
            eprintln!("glab: {e}");
            eprintln!("--- instance ({}) ---", path.display());
            eprint!("{source}");
            ExitCode::from(1)
        }
        Err(EvalError::Core(e)) => fail(2, e),
    }
}
