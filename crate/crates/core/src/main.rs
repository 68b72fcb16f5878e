use std::process::ExitCode;

use altruist::cli::{run, Cli, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are validation failures; exit code 2 is reserved
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = RunConfig::from_cli(&cli).and_then(|cfg| run(&cfg, &mut std::io::stdout()));
    match outcome {
        Ok(o) => ExitCode::from(o.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
