mod args;
mod commands;
mod error;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, CommonArgs};
use commands::Outcome;
use error::{CliError, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

fn common(cmd: &Command) -> &CommonArgs {
    match cmd {
        Command::Build(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::Classify(a) => a,
        Command::Tensor(a) => &a.common,
        Command::Scan(a) => &a.common,
        Command::Dump(a) => &a.common,
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let outcome: Outcome = match &cli.command {
        Command::Build(a) => commands::build(a)?,
        Command::Verify(a) => commands::verify(a)?,
        Command::Classify(a) => commands::classify_cmd(a)?,
        Command::Tensor(a) => commands::tensor(a)?,
        Command::Scan(a) => commands::scan_cmd(a)?,
        Command::Dump(a) => commands::dump(a)?,
    };
    let mut doc = outcome.document;
    if !doc.ends_with('\n') {
        doc.push('\n');
    }
    match &common(&cli.command).out {
        Some(path) => fs::write(path, doc)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout().write_all(doc.as_bytes())?,
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::from(EXIT_PASS)
                }
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::from(EXIT_PASS),
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_FAIL)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
