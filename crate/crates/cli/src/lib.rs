//! The `fpt` command-line tool.
//!
//! Exit codes: 0 success, 1 a suite case or cache check failed, 2 bad
//! input, 3 no tested level is F-pure, 4 a resource limit was hit.

pub mod cache;
pub mod commands;
pub mod config;
pub mod problem;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_F_PURE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

/// An error with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_RESOURCE,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Parser, Debug)]
#[command(name = "fpt", version, about = "Exact F-pure threshold computations over prime fields")]
pub struct Cli {
    /// Read `key=value` flag defaults from FILE; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ν-sequence, rigorous threshold interval and conjectured limit of a pair.
    Nu(NuArgs),
    /// Threshold, closure, height or multiplicity of a monomial ideal.
    Monomial(MonomialArgs),
    /// Run a named verification suite.
    Suite(SuiteArgs),
}

#[derive(Args, Debug)]
pub struct NuArgs {
    /// Characteristic p.
    #[arg(long)]
    pub prime: u64,
    /// Comma-separated variable names, e.g. X,Y,Z.
    #[arg(long)]
    pub vars: String,
    /// Semicolon-separated generators, e.g. "X^2+Y;Z".
    #[arg(long)]
    pub gens: String,
    /// Hypersurface equation f; the pair then lives on R/(f).
    #[arg(long)]
    pub multiplier: Option<String>,
    /// Number of levels q = p, p^2, …, p^E (default 3 for p <= 7, else 2).
    #[arg(long = "e", value_name = "E")]
    pub e: Option<u32>,
    /// Print the versioned JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Show witness tuples and the levels achieving the bounds.
    #[arg(long)]
    pub explain: bool,
    /// Neither read nor write the result cache.
    #[arg(long)]
    pub no_cache: bool,
    /// Recompute every level and compare with the cache.
    #[arg(long, conflicts_with = "no_cache")]
    pub verify_cache: bool,
    /// Cap on terms in any intermediate polynomial.
    #[arg(long, value_name = "N")]
    pub max_terms: Option<usize>,
    /// Cap on search nodes per level.
    #[arg(long, value_name = "N")]
    pub max_tuples: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Fpt,
    Closure,
    Height,
    Mult,
}

#[derive(Args, Debug)]
pub struct MonomialArgs {
    /// Comma-separated variable names.
    #[arg(long)]
    pub vars: String,
    /// Comma-separated monomials, e.g. "X^2,Y^3".
    #[arg(long)]
    pub gens: String,
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GoldenMode {
    Write,
    Check,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// duval, bounds, hypersurface-ab, monomial-laws, multiplicity, summation or threshold-edge.
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated primes restricting the suite's grid.
    #[arg(long)]
    pub primes: Option<String>,
    /// Level budget overriding the suite's default.
    #[arg(long = "e", value_name = "E")]
    pub e: Option<u32>,
    /// Write or check the golden transcript.
    #[arg(long, value_enum)]
    pub golden: Option<GoldenMode>,
    #[arg(long, default_value = "golden/v1")]
    pub golden_dir: PathBuf,
    /// Print the full transcript.
    #[arg(long)]
    pub transcript: bool,
    /// Run cases one at a time.
    #[arg(long)]
    pub sequential: bool,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run(args: Vec<String>) -> i32 {
    let args = match config::expand(args, &Cli::command()) {
        Ok(a) => a,
        Err(f) => return report(f),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = match cli.command {
        Command::Nu(a) => commands::nu(&a),
        Command::Monomial(a) => commands::monomial(&a),
        Command::Suite(a) => commands::suite(&a),
    };
    match out {
        Ok(code) => code,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> i32 {
    eprintln!("error: {f}");
    f.code
}
