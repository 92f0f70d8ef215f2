use std::process::ExitCode;

use clap::Parser;

use cpz::cli::{run, Cli};
use cpz::CpzError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CpzError::Io(_) => 2,
                _ => 1,
            })
        }
    }
}
