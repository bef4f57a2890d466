use clap::Parser;

use hkcount::cli::{self, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = cli::run(cli) {
        eprintln!("hkcount: {e}");
        std::process::exit(e.exit_code());
    }
}
