mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command, Format};
use crate::commands::{CliError, Rendered};

const EXIT_FAIL: u8 = 1;
const EXIT_COMPUTE: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Sizes the global thread pool from `HEINZ_THREADS`, if set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("HEINZ_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("HEINZ_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let (rendered, output): (Rendered, _) = match &cli.command {
        Command::Constants { n, tol, output } => (
            commands::constants(&n.0, *tol, output.format.unwrap_or(Format::Table))?,
            output,
        ),
        Command::Profile {
            n,
            which,
            grid,
            tol,
            output,
        } => (
            commands::profile(*n, *which, grid, *tol, output.format.unwrap_or(Format::Csv))?,
            output,
        ),
        Command::Verify(args) => (commands::verify(args)?, &args.output),
    };
    match &output.output {
        Some(path) => std::fs::write(path, rendered.text).map_err(CliError::Io)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.text.as_bytes()).map_err(CliError::Io)?;
            stdout.flush().map_err(CliError::Io)?;
        }
    }
    Ok(rendered.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_FAIL)
        }
        Err(e) => {
            eprintln!("heinz: {e}");
            match e {
                CliError::Usage(_) => ExitCode::from(EXIT_USAGE),
                CliError::Compute(_) | CliError::Io(_) => ExitCode::from(EXIT_COMPUTE),
            }
        }
    }
}
