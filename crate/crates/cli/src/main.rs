//! `sigcalc`: discrete logarithms and their signatures from the command line.
//!
//! Exit codes: 0 ok, 1 invariant failure, 2 precondition, 3 budget,
//! 4 condition report, 5 assumption violated.

mod dlog;
mod ec;
mod fixture;
mod report;
mod signature;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sigcalc::Exec;

#[derive(Parser)]
#[command(name = "sigcalc", version, about = "Discrete logarithms, signatures and their cross-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete logarithm in F_p^* by BSGS or index calculus.
    Dlog(dlog::DlogArgs),
    /// Ramification signature of a lifted unit.
    Signature(signature::SignatureArgs),
    /// Elliptic-curve round trip, cokernel dimensions and torsion scan.
    Ec(ec::EcArgs),
    /// Invariant suites, one JSON line per suite.
    Verify(verify::VerifyArgs),
}

/// Flags shared by every command.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Master seed; every randomized choice derives from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit a JSON report instead of key = value lines.
    #[arg(long)]
    pub json: bool,
    /// Skip oracle cross-checks.
    #[arg(long)]
    pub no_verify: bool,
    /// Run the data-parallel loops on one thread.
    #[arg(long)]
    pub sequential: bool,
}

impl Common {
    pub fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match cli.command {
        Command::Dlog(args) => report::finish(dlog::run(&args), args.common.json),
        Command::Signature(args) => report::finish(signature::run(&args), args.common.json),
        Command::Ec(args) => report::finish(ec::run(&args), args.common.json),
        Command::Verify(args) => verify::run(&args),
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    code
}
