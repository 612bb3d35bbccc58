//! Command-line front end: expression parsing, formatting and subcommands.

pub mod args;
pub mod parse;
pub mod run;

pub use args::{Cli, Format};
pub use parse::{parse_complex, parse_element, parse_expr, parse_scalar, Expr};
pub use run::{format_element, format_rep, parse_rep, render_matrix, run, run_from, Outcome, Report};
