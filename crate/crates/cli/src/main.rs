//! `abcalc`: evaluate, compare, sweep and verify complex-order differintegrals.

mod args;
mod complex;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Eval(a) => run::cmd_eval(&a),
        Command::Compare(a) => run::cmd_compare(&a),
        Command::Sweep(a) => run::cmd_sweep(&a),
        Command::Verify(a) => run::cmd_verify(&a),
    };
    ExitCode::from(code)
}
