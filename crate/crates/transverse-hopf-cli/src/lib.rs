//! Command-line front end: expression syntax, command dispatch and reports.

pub mod commands;
pub mod parse;
pub mod report;
pub mod selftest;

pub use commands::{run, Cli, CliError};
