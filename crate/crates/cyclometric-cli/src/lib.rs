//! Command-line companion to `cyclometric-core`.
//!
//! This crate hosts everything that needs the standard library: flag parsing,
//! JSON/CSV wire formats, file input, and a work-stealing parallel driver for
//! the Monte Carlo concentration experiment. All numeric output is exact
//! rational text (`"num/den"`, or a bare integer when the denominator is 1);
//! floating-point fields are correctly rounded from the exact values. A fixed
//! seed yields byte-identical output across runs and thread counts.

pub mod cli;
pub mod commands;
pub mod error;
pub mod parallel;
pub mod parse;
pub mod wire;

pub use cli::run;
pub use error::CliError;
