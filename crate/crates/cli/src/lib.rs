//! Command-line front end for cyclic cubic fields: per-parameter reports,
//! table sweeps, fixture verification and a property self-test.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod render;
pub mod report;
pub mod sweep;

pub use commands::{run, Cli};
pub use error::CliError;
