//! `gnx`: regime checks, extremizer searches, Riesz energies, lemma
//! verification and the endpoint demo from the command line.
//!
//! Exit codes: 0 success, 1 numerical breakdown, 2 domain or regime
//! rejection, 3 I/O failure, 4 verification failure.

mod cli;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = cli.threads;
    match cli.command {
        Command::Regime(args) => commands::regime(args),
        Command::Optimize(args) => commands::optimize(args, threads),
        Command::Energy(args) => config::with_threads(threads, None, || commands::energy(args)),
        Command::Demo(args) => commands::demo(args),
        Command::Verify(args) => config::with_threads(threads, None, || commands::verify(args)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gnx: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
