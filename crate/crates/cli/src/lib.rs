//! Command-line front end for `rootcloud-core`.

pub mod args;
pub mod commands;
pub mod pipeline;

use anyhow::Result;
use rootcloud_core::ingest::HodgeKind;
use rootcloud_core::{HodgeCY3, HodgeCY4};

use args::{Cli, Command};

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Ensemble(a) => commands::ensemble(a, cli.quiet),
        Command::Cy3(a) => commands::cy::<HodgeCY3>(a, HodgeKind::Cy3, cli.quiet),
        Command::Cy4(a) => commands::cy::<HodgeCY4>(a, HodgeKind::Cy4, cli.quiet),
        Command::Toric(a) => commands::toric(a, cli.quiet),
        Command::Mahler(a) => commands::mahler(a),
    }
}
