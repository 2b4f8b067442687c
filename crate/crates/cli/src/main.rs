use std::process::ExitCode;

use clap::Parser;
use rootcloud_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match rootcloud_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
