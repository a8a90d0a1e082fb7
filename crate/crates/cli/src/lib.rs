//! Command-line surface for splint branching computations.

pub mod app;
pub mod cache;
pub mod render;

pub use app::{run, Cli, CliError, Outcome};
