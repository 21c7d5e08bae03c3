use clap::Parser;
use qkernel_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli.command).code());
}
