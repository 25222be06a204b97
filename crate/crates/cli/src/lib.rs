//! Command-line front end for the fractional Duffing solvers.
//!
//! Three subcommands: `simulate` writes trajectory CSV files, `converge`
//! writes an error/accuracy table over a grid-doubling ladder, `plot`
//! renders a trajectory CSV to SVG. All outputs are deterministic:
//! identical flags produce byte-identical files.

use clap::Parser;

pub mod config;
pub mod csvio;
pub mod svg;

mod commands;

pub use commands::{cmd_converge, cmd_plot, cmd_simulate};

/// Failure classes, each with its own exit code: configuration errors (2),
/// solver aborts (3), I/O errors (4).
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(fracduff_core::Error),
    Io(String),
}

impl CliError {
    pub fn config(e: impl std::fmt::Display) -> Self {
        CliError::Config(e.to_string())
    }

    /// Classifies a solver-call failure: mid-run aborts are solver errors,
    /// anything the solver rejected up front is configuration.
    pub fn from_solver(e: fracduff_core::Error) -> Self {
        match e {
            fracduff_core::Error::NonFiniteState { .. } => CliError::Solver(e),
            other => CliError::Config(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Solver(e) => write!(f, "{e}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Parses the command line and dispatches; returns the process exit code.
pub fn run() -> i32 {
    let cli = config::Cli::parse();
    let result = match &cli.command {
        config::Command::Simulate(args) => cmd_simulate(args),
        config::Command::Converge(args) => cmd_converge(args),
        config::Command::Plot(args) => cmd_plot(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
