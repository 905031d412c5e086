mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Qubit(a) => commands::cmd_qubit(a),
        Command::Scenario(a) => commands::cmd_scenario(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::TmRun(a) => commands::cmd_tm(a),
        Command::TmDiag(a) => commands::cmd_diag(a),
    };
    match result {
        Ok(exit) => ExitCode::from(exit.code()),
        Err(e) => {
            eprintln!("qtm: {e:#}");
            ExitCode::from(1)
        }
    }
}
