//! Command implementations behind the `latcanon` binary.

pub mod bench;
pub mod commands;
pub mod error;
pub mod input;
pub mod output;
pub mod selftest;

pub use error::{CliError, Result};
