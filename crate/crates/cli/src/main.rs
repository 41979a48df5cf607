mod args;
mod commands;
mod engine;
mod error;
mod manifest;
mod report;

use clap::Parser;

use args::{Cli, Command};
use error::CliResult;

fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::Cluster(a) => commands::cluster(a),
        Command::ClusterPoints(a) => commands::cluster_points(a),
        Command::Metrics(a) => commands::metrics(a),
        Command::Bench(a) => commands::bench(a),
        Command::Gadget(a) => commands::gadget(a),
        Command::Replay(a) => commands::replay(a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // --help and --version land here too.
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = dispatch(cli.command) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
