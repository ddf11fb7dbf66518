//! Command-line front end for `pairsuite-core`: rate-bound tables, exact
//! pair-ball sizes, RS list decoding under the pair metric, random-code
//! experiments, and a deterministic selftest.
//!
//! Reports are emitted as JSON (default) or CSV on stdout; diagnostics go to
//! stderr. Identical invocations produce byte-identical stdout unless
//! `--timings` is requested.

pub mod args;
pub mod commands;
pub mod output;
pub mod selftest;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::CliError;

/// Parses the process arguments, runs the requested command, and returns the
/// process exit code (0 success, 1 failed self checks or internal
/// inconsistency, 2 usage, 3 resource guard, 4 domain error).
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are "errors" to clap but successes to users.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(stdout_payload) => match deliver(&cli, &stdout_payload) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("pairsuite: {}", e.message);
                e.code
            }
        },
        Err(e) => {
            eprintln!("pairsuite: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Bounds(a) => commands::bounds(a, cli.format),
        Command::Ball(a) => commands::ball(a, cli.format),
        Command::Decode(a) => commands::decode(a, cli.format),
        Command::Experiment(a) => commands::experiment(a, cli.format),
        Command::Selftest(a) => {
            let outcome = selftest::run(a.fault);
            if outcome.failures > 0 {
                // The report still goes out before the nonzero exit.
                deliver(cli, &outcome.stdout)?;
                return Err(CliError {
                    code: 1,
                    message: format!("{} selftest suite(s) failed", outcome.failures),
                });
            }
            Ok(outcome.stdout)
        }
    }
}

fn deliver(cli: &Cli, payload: &str) -> Result<(), CliError> {
    match &cli.out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => std::fs::write(path, payload).map_err(|e| CliError {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        }),
    }
}
