mod cli;
mod commands;
mod error;
mod manifest;
mod report;

use clap::error::ErrorKind;
use clap::Parser;

use crate::cli::{expand_config, Cli};
use crate::commands::{dispatch, Invocation};

fn run(argv: Vec<String>) -> i32 {
    let expanded = match expand_config(argv.clone()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let cli = match Cli::try_parse_from(&expanded) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    let inv = Invocation {
        argv: argv.into_iter().skip(1).collect(),
        args: expanded
            .into_iter()
            .skip(1)
            .filter(|a| !matches!(a.as_str(), "-v" | "-vv" | "--verbose"))
            .collect(),
    };
    log::debug!("command: {}", cli.command.name());
    match dispatch(cli.command, &inv) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn main() {
    std::process::exit(run(std::env::args().collect()));
}
