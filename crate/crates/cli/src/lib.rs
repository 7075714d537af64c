//! Command-line front end for `evobic`: file formats, the `run`, `generate`,
//! `eval` and `bench` commands, and result tables.

pub mod args;
pub mod bench;
pub mod commands;
pub mod error;
pub mod io;

pub use error::{CliError, Result};
