mod collapse;
mod diag;
mod encode;
mod reconstruct;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exact-arithmetic experiments on gap classes, graph decks, oracle
/// polynomials and diagonalization stages.
#[derive(Debug, Parser)]
#[command(name = "gaplab", version)]
struct Cli {
    /// Directory for JSON reports. Without it the report goes to stdout.
    #[arg(long, global = true)]
    report_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a promise gap function into a single-target witness and verify it.
    Collapse(collapse::Args),
    /// Count deck preimages, for one deck or a sweep over all graphs.
    Reconstruct(reconstruct::Args),
    /// Encode oracle machines as multilinear polynomials and check them.
    Encode(encode::Args),
    /// Run a diagonalization stage search.
    Diag(diag::Args),
}

/// Outcome of a subcommand that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Clean,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dir = cli.report_dir.as_deref();
    let run = match &cli.command {
        Command::Collapse(a) => collapse::run(a, dir),
        Command::Reconstruct(a) => reconstruct::run(a, dir),
        Command::Encode(a) => encode::run(a, dir),
        Command::Diag(a) => diag::run(a, dir),
    };
    match run {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn announce(written: Option<report::Written>) {
    match written {
        Some(report::Written::New(p)) => eprintln!("report: {}", p.display()),
        Some(report::Written::Kept(p)) => eprintln!("report: {} (existing)", p.display()),
        None => {}
    }
}
