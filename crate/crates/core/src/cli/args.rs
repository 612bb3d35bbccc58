use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::freealg::Algebra;
use crate::repmod::Window;

#[derive(Parser, Debug)]
#[command(name = "qiso2", version, about = "Symbolic computation for U_q(iso2) and U^_q(m2)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Algebra for parsed expressions without generators.
    #[arg(long, global = true, value_enum)]
    pub algebra: Option<AlgebraArg>,
    #[arg(long, global = true, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Deformation parameter (numeric mode).
    #[arg(long, global = true, default_value = "1.7")]
    pub q: String,
    /// Defaults to the free symbol `s` (exact) or `0.8+0.3i` (numeric).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Defaults to the free symbol `r` (exact) or `2.1` (numeric).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Basis window `lo:hi`.
    #[arg(long, global = true, default_value = "-5:5", allow_hyphen_values = true)]
    pub window: Window,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraArg {
    Iso2,
    M2,
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::Iso2 => Algebra::Iso2,
            AlgebraArg::M2 => Algebra::M2,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Nf { expr: String },
    /// Overlap check of a rewrite system.
    Confluence {
        /// Check the U^_q(m2) system instead of U_q(iso2).
        #[arg(long)]
        m2: bool,
        /// Use the iso2 system with one rule sign flipped.
        #[arg(long)]
        broken: bool,
        #[arg(long, default_value_t = 2)]
        k_max: i32,
    },
    /// Images of the generators under psi, or psi of an expression.
    Psi {
        expr: Option<String>,
        /// Compose with F -> -F.
        #[arg(long)]
        twisted: bool,
    },
    /// Run a named verification.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Representation matrices and constructions.
    Rep {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(subcommand)]
        action: RepAction,
    },
    /// Classify the parameters `--r`, `--s`.
    Classify,
    /// Decide equivalence of two representations.
    Equiv { a: String, b: String },
    /// Canonical representative of a representation.
    Canon { p: String },
    /// Numeric intertwiner search.
    Intertwine { a: String, b: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Relations,
    Psi,
    Casimir,
    Decompose,
    Reconstruct,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `pi_rs` of U^_q(m2).
    Pi,
    /// `R_rs` of U_q(iso2).
    Classical,
    Nonclassical,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "classical")]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub eps: i8,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub eps2: i8,
}

#[derive(Subcommand, Debug)]
pub enum RepAction {
    /// Matrix of one generator (`I`, `T1`, `T2`, `K`, `Kinv`, `E`, `F`, `G[k]`).
    Matrix { gen: String },
    Spectrum,
    Casimir,
    /// Split `R_rs` at `s = eps i q^{m+1/2}`.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Rebuild a module from a seed vector.
    Reconstruct {
        #[arg(long, default_value_t = 4)]
        steps: usize,
        /// Casimir value on the seed (defaults to `r^2`).
        #[arg(long)]
        c: Option<String>,
    },
}
