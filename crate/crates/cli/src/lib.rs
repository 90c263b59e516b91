//! Command-line companion to `fuzzpettis-core`: scenario files, settings
//! resolution, CSV/JSON reports, and the four commands (`integrate`,
//! `decompose`, `verify`, `plot-data`).
//!
//! The library half exists so integration tests can drive commands
//! in-process; `main.rs` is a thin argument-parsing shim over
//! [`commands`].

pub mod commands;
pub mod error;
pub mod report;
pub mod scenario;

pub use commands::{cmd_decompose, cmd_integrate, cmd_plot_data, cmd_verify};
pub use commands::{CommandOutput, CommonOpts, VerifyOpts};
pub use error::{CliError, Result, EXIT_BREACH, EXIT_IO, EXIT_VALIDATION};
