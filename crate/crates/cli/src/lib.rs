//! Command-line front end for `frieze-core`.
//!
//! Every command writes JSON to stdout (one document, or JSON lines for
//! `orbit`); `--pretty` switches to a text form with polynomials in the
//! parser's syntax.

mod commands;
mod error;
mod reproduce;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frieze_core::Budget;

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "frieze", version, about = "Frieze varieties of acyclic quivers, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub budgets: BudgetArgs,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest number of terms in a symbolic Laurent polynomial.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_MAX_TERMS, value_parser = positive_usize)]
    pub term_budget: usize,
    /// Largest bit length of an orbit coordinate.
    #[arg(long, global = true, env = "FRIEZE_BUDGET_BITS", default_value_t = Budget::DEFAULT_MAX_BITS, value_parser = positive_u64)]
    pub bit_budget: u64,
    /// Largest orbit index visited while sampling vanishing spaces.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_HORIZON, value_parser = positive_usize)]
    pub horizon: usize,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            max_terms: self.term_budget,
            max_bits: self.bit_budget,
            horizon: self.horizon,
        }
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Args)]
pub struct QuiverArgs {
    /// Quiver JSON file: {"n": 3, "arrows": [[2,1,1],[3,1,1],[3,2,1]]}.
    #[arg(long)]
    pub quiver: PathBuf,
    /// Start point as comma-separated rationals (default all ones).
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Coxeter orbit P_0..P_T as JSON lines.
    Orbit {
        #[command(flatten)]
        input: QuiverArgs,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Polynomials of degree <= d vanishing on an orbit or one residue class.
    Vanish {
        #[command(flatten)]
        input: QuiverArgs,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(long, default_value_t = 1, value_parser = positive_usize)]
        stride: usize,
    },
    /// Split the orbit into residue-class components.
    Components {
        #[command(flatten)]
        input: QuiverArgs,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 6, value_parser = positive_usize)]
        m_max: usize,
    },
    /// Certify an invariant rational function and derive component equations.
    Invariant {
        #[command(flatten)]
        input: QuiverArgs,
        /// The function, e.g. "(x1+x3)/x2".
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 6, value_parser = positive_usize)]
        k_max: usize,
    },
    /// Representation type and diagram name.
    Classify {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Invariant from a sink/source pair with matching arrow counts.
    Symmetry {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Regenerate a worked example and compare it with known values.
    Reproduce {
        #[arg(value_enum)]
        case: Case,
        /// Size of the affine A_n case.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    A2,
    Kronecker,
    A3double,
    Atilde2,
    Atilden,
    Qa5,
}

/// Runs a parsed command line and returns the text for stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let budget = cli.budgets.budget();
    match &cli.command {
        Command::Orbit { input, steps } => commands::orbit(input, *steps, &budget, cli.pretty),
        Command::Vanish {
            input,
            degree,
            offset,
            stride,
        } => commands::vanish(input, *degree, *offset, *stride, &budget, cli.pretty),
        Command::Components { input, degree, m_max } => {
            commands::components(input, *degree, *m_max, &budget, cli.pretty)
        }
        Command::Invariant { input, h, k_max } => commands::invariant(input, h, *k_max, &budget, cli.pretty),
        Command::Classify { quiver } => commands::classify(quiver, cli.pretty),
        Command::Symmetry { quiver } => commands::symmetry(quiver, &budget, cli.pretty),
        Command::Reproduce { case, n } => reproduce::run(*case, *n, &budget, cli.pretty),
    }
}
