//! `modiff`: solve, compare, reduce and generate modular difference systems.
//!
//! Decision commands exit with 10 (SAT) or 20 (UNSAT); other commands exit 0
//! on success. Bad input exits 1 and a failed self-check exits 2.

mod gen;
mod model;
mod reduce;
mod solve;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use modiff::reductions::Variant;

pub const EXIT_SAT: u8 = 10;
pub const EXIT_UNSAT: u8 = 20;

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input, bad flags, exhausted budget (exit 1).
    Input(String),
    /// An answer failed its own re-check (exit 2).
    Internal(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) => write!(f, "error: {msg}"),
            Failure::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

pub type CmdResult = Result<u8, Failure>;

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

#[derive(Parser, Debug)]
#[command(
    name = "modiff",
    version,
    about = "Difference constraints over modular arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a constraint file.
    Solve(SolveArgs),
    /// Encode a DIMACS graph's 3-colorability as a constraint file.
    Reduce(ReduceArgs),
    /// Turn a model of an encoding back into a coloring.
    Decode(DecodeArgs),
    /// Print a built-in or random instance.
    Gen(GenArgs),
}

#[derive(clap::Args, Debug)]
pub struct SolveArgs {
    /// Constraint file (`mod N` header, one constraint per line).
    pub file: PathBuf,
    /// Enumerate all N^p assignments instead of the bounded search.
    #[arg(long, conflicts_with = "relax")]
    pub oracle: bool,
    /// Read the system over the integers (no wrap-around) and compare.
    #[arg(long)]
    pub relax: bool,
    /// Pack a SAT model into the small-model range before printing it.
    #[arg(long, conflicts_with = "relax")]
    pub normalize: bool,
    /// Largest number of assignments `--oracle` may try.
    #[arg(long, default_value_t = modiff::mdl::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Report elapsed time on standard error.
    #[arg(long)]
    pub timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum VariantArg {
    Nonstrict,
    Strict,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Nonstrict => Variant::NonStrict,
            VariantArg::Strict => Variant::Strict,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct ReduceArgs {
    /// Graph in DIMACS edge format.
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "nonstrict")]
    pub variant: VariantArg,
    /// Modulus N (at least 4, or 9 for the strict variant).
    #[arg(long = "mod", value_name = "N")]
    pub modulus: BigInt,
    /// Writes `<PREFIX>.mdl` and `<PREFIX>.meta`.
    #[arg(long, value_name = "PREFIX")]
    pub out: PathBuf,
}

#[derive(clap::Args, Debug)]
pub struct DecodeArgs {
    /// Sidecar written by `reduce`.
    pub meta: PathBuf,
    /// `name = value` lines, e.g. the output of `solve`.
    pub model: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// `x >= 0`, `x + 1 <= 0`
    Intro1,
    /// Same as `chain`.
    Intro2,
    /// The four-constraint system with an integer cycle of weight -1.
    #[value(name = "idl-paper")]
    IdlExample,
    /// `x0 < x1 < ... < xN`
    Chain,
    /// Seeded random system.
    Random,
}

#[derive(clap::Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Modulus N [default: 16 for intro1, 5 for chain, 10 for idl-paper, 12 for random].
    #[arg(long = "mod", value_name = "N")]
    pub modulus: Option<BigInt>,
    /// Random: number of variables.
    #[arg(long, default_value_t = 3)]
    pub vars: usize,
    /// Random: number of constraints.
    #[arg(long, default_value_t = 5)]
    pub cons: usize,
    /// Random: offsets and constants lie in [-m, m].
    #[arg(long, default_value_t = 2)]
    pub m: i64,
    /// Random: generator seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(args) => solve::run(&args),
        Command::Reduce(args) => reduce::run_reduce(&args),
        Command::Decode(args) => reduce::run_decode(&args),
        Command::Gen(args) => gen::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(match failure {
                Failure::Input(_) => 1,
                Failure::Internal(_) => 2,
            })
        }
    }
}
