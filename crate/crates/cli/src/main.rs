mod args;
mod bench;
mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Solve(a) => commands::solve(a, cli.format, &mut out),
        Command::EnumMds(a) => commands::enum_mds(a, cli.format, &mut out),
        Command::Encode(a) => commands::encode(a, &mut out),
        Command::Oracle(a) => commands::oracle(a, cli.format, &mut out),
        Command::Sat(a) => commands::sat(a, &mut out),
        Command::Bench(a) => bench::run(a, cli.format, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(Outcome::Yes) | Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
