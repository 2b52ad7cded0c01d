use clap::Parser;
use k4hol::cli::{self, Cli};

fn main() {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                cli::exit::ENVIRONMENT
            } else {
                cli::exit::SUCCESS
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(cli::run(&parsed));
}
