use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use modinv::{run, Cli, RunConfig, RunError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match RunConfig::try_from(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if config.s > 4 {
        eprintln!("warning: q = 2^{} is beyond the bundled profiles; runs may be slow", config.s);
    }
    match run(&config) {
        Ok(doc) => {
            // A closed pipe downstream is not an error of the run.
            let _ = writeln!(std::io::stdout(), "{}", doc.render(config.format));
            if doc.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ RunError::Usage(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
