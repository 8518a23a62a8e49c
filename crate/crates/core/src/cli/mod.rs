//! The `premon` command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
//! 3 inconclusive within budget (only with `--strict`).

mod commands;
mod instance;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::budget::{Degree, SearchBudget};
use crate::config::{Config, ConfigError};

pub use commands::{chain, classify, run, ChainRendering, EnumRow, LengthsRow, StepCertificate};
pub use instance::{Element, FinitePreorder, Instance, InstanceSpec, NamedPreorder};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

/// How a command ended, before `--strict` is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self, strict: bool) -> ExitCode {
        ExitCode::from(self.code(strict))
    }

    pub fn code(self, strict: bool) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive if strict => 3,
            Outcome::Inconclusive => 0,
        }
    }

    /// Failure dominates, then inconclusive.
    pub fn combine(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Inconclusive, _) | (_, Outcome::Inconclusive) => Outcome::Inconclusive,
            _ => Outcome::Pass,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "premon", version, about = "Monoids with preorders: classification, chains and verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Exit with code 3 when an answer is inconclusive within budget.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(flatten)]
    pub budget: BudgetFlags,
}

/// Overrides for the budget read from `PREMON_CONFIG` (or the defaults).
#[derive(Debug, Default, Args)]
pub struct BudgetFlags {
    #[arg(long, global = true)]
    pub chain_depth: Option<usize>,
    #[arg(long, global = true)]
    pub factor_cap: Option<usize>,
    #[arg(long, global = true)]
    pub node_cap: Option<usize>,
    #[arg(long, global = true)]
    pub exponent_cap: Option<usize>,
    #[arg(long, global = true)]
    pub rewrite_radius: Option<usize>,
}

impl BudgetFlags {
    pub fn resolve(&self) -> Result<SearchBudget, CliError> {
        let mut b = Config::from_env()?.budget;
        let set = |field: &mut usize, v: Option<usize>| {
            if let Some(v) = v {
                *field = v;
            }
        };
        set(&mut b.chain_depth, self.chain_depth);
        set(&mut b.factor_cap, self.factor_cap);
        set(&mut b.node_cap, self.node_cap);
        set(&mut b.exponent_cap, self.exponent_cap);
        set(&mut b.rewrite_radius, self.rewrite_radius);
        b.validate().map_err(|e| CliError::Input(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unit, quark, irreducibility, height and artinian status of an element.
    Classify {
        /// Instance JSON, inline or as a file path.
        #[arg(long)]
        instance: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Run a verification suite and emit one report per instance.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// A strictly decreasing chain with per-step certificates.
    Chain {
        #[arg(long)]
        instance: String,
        /// Starting element (conflicts with --index).
        #[arg(long, conflicts_with = "index", allow_hyphen_values = true)]
        element: Option<String>,
        /// Family chain index: `a·rⁱ` for Puiseux, `x_{ih}` for presented.
        #[arg(long)]
        index: Option<u64>,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// Bounded length sets of a Puiseux element at several exponent caps.
    Lengths {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        element: String,
        /// Exponent caps to report (defaults to the budget's).
        #[arg(long, value_delimiter = ',')]
        caps: Vec<usize>,
    },
    /// Monoids of order n up to isomorphism.
    Enum {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Divisibility,
    Random,
    Exhaustive,
}

/// Which finite premons a suite runs over: every monoid of order `1..=n`
/// crossed with the preorders chosen by `mode`.
#[derive(Debug, Args)]
pub struct FiniteSelection {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Divisibility)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Random preorders per monoid.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Puiseux,
    Poly,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Every non-unit factors into degree-s irreducibles.
    #[command(alias = "factorization")]
    Lemma {
        #[command(flatten)]
        select: FiniteSelection,
        #[arg(long, value_delimiter = ',', default_values_t = [Degree::Finite(2), Degree::Finite(3), Degree::Finite(6)])]
        s: Vec<Degree>,
    },
    /// Factorable iff locally artinian.
    #[command(alias = "factorable")]
    Cor4 {
        #[command(flatten)]
        select: FiniteSelection,
        /// Run on the Puiseux monoid r = a/b instead of finite premons.
        #[arg(long, requires = "b")]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        b: Option<u64>,
        #[arg(long, default_value_t = 4)]
        generators: usize,
    },
    /// Acyclic monoids: atomic iff generated by ACCP elements.
    #[command(alias = "acyclic-accp")]
    Cor5 {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long, default_value_t = 2)]
        a: u64,
        #[arg(long, default_value_t = 3)]
        b: u64,
        #[arg(long, default_value_t = 4)]
        generators: usize,
    },
    /// Search for an irreducible element that is not a quark.
    Nonquark {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        seeds: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Height 0 iff unit, height 1 iff quark.
    Heights {
        #[command(flatten)]
        select: FiniteSelection,
    },
    /// k-local artinianity is monotone in k.
    Ladder {
        #[command(flatten)]
        select: FiniteSelection,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Atom, quark and irreducible agree on Puiseux generators.
    Coincidence {
        #[arg(long, default_value_t = 2)]
        a: u64,
        #[arg(long, default_value_t = 3)]
        b: u64,
        #[arg(long, default_value_t = 4)]
        generators: usize,
    },
}

/// Parses arguments, runs, and maps the result to an exit code.
pub fn main_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match run(&cli, out, err) {
        Ok(outcome) => outcome.code(cli.strict),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
