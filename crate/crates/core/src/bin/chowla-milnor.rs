use std::io::Write;
use std::process::ExitCode;

use chowla_milnor::cli::Cli;
use clap::Parser;

fn main() -> ExitCode {
    let outcome = Cli::parse().execute();
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.exit_code as u8)
}
