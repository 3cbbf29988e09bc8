//! Command-line workflows around `srd-core`: configuration parsing, the
//! certify/simulate/validate/sweep pipelines and their CSV outputs.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{run, Status};
pub use config::{Command, ConfigError, RunConfig};
