//! Command-line front end: expression grammar, reports and dispatch.

pub mod commands;
pub mod parse;
pub mod report;

pub use commands::{run, run_args, Cli, CliError, Outcome};
pub use parse::{parse_expr, parse_field, parse_map, ParseError};
