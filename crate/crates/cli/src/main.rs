mod args;
mod commands;
mod error;
mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(mut cli: Cli) -> Result<(), CliError> {
    cli.apply_config()?;
    let format = cli.format;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Table(a) => commands::table(a, format, out),
        Command::Verify(a) => commands::verify(a, format, out),
        Command::Classify(a) => commands::classify(a, format, out),
        Command::Waring(a) => commands::waring(a, format, out),
        Command::Probnum(a) => commands::probnum(a, format, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let command = cli.command.name();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("arithfn {command}: {msg}"),
                CliError::Runtime(msg) => eprintln!("arithfn {command}: error: {msg}"),
                CliError::ChecksFailed => eprintln!("arithfn {command}: one or more checks failed"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
