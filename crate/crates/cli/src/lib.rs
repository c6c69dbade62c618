//! The `ha` command: JSON reports over `ha-core`.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input or usage.

mod commands;
mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Report, SCHEMA, VERSION};
pub use suites::{check_all, run_suite, SuiteConfig, SuiteOutcome, SUITES};

#[derive(Debug, Parser)]
#[command(name = "ha", version, about = "Finite-truncation analytic cyclic homology")]
pub struct Cli {
    /// Residue characteristic of V.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Working precision N (residues mod p^N).
    #[arg(long, global = true, default_value_t = 16)]
    pub precision: u32,
    /// Truncation degree D.
    #[arg(long, global = true)]
    pub truncate: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// HA(L(E)) = coker N_E ⊕ ker N_E[1], or HA(C(E)) = V^(E⁰) with --cohn.
    Graph {
        file: PathBuf,
        #[arg(long)]
        cohn: bool,
    },
    /// Homology of the X-complex A ⇄ Ω¹A/[,] of a commutative algebra.
    Xcomplex {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Tube membership: Fedosov closure, floor estimates, support growth.
    Tube {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, value_enum)]
        check: TubeCheck,
    },
    /// φ/ψ lifting recursion of the standard connection: δψ = 0 and the
    /// curvature of the order-n section vanishes below degree 2(n+1).
    Lift {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
    /// Lifts an idempotent matrix mod p to one mod p^N.
    Idem {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Strong Gröbner basis over Z and the filtered-Noetherian witness.
    Groebner {
        file: PathBuf,
        #[arg(long)]
        witness: Option<usize>,
    },
    /// de Rham cohomology of a smooth affine curve through its dagger completion.
    Derham {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Property suites; `all` runs every suite.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TubeCheck {
    Closure,
    Floors,
    Growth,
}

/// Failure before a report exists; always exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `args` (program name first), writes the report to `out` and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(report) => {
            let _ = writeln!(out, "{}", report.to_json());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
