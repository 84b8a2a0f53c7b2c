use clap::Parser;
use coupled_modes_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("coupled-modes: {e}");
        std::process::exit(e.exit_code());
    }
}
