use std::process::ExitCode;

use clap::Parser;
use hyperspectra::cli::{emit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| emit(&cli, &o).map(|()| o));
    match outcome {
        Ok(o) => {
            eprintln!("{}", o.summary);
            ExitCode::from(o.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
