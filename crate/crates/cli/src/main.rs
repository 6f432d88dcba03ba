use clap::Parser;

use discord_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("discord: {e}");
        std::process::exit(e.exit_code());
    }
}
