use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use chainrep::cli::{exit_code, run, Cli, CHECK_FAILED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.output.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(CHECK_FAILED as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
