use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cli_orchestrator::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let path = cli.out_path(cli.settings().ok().as_ref());
    let written = match &path {
        Some(p) if !outcome.output.is_empty() || outcome.error.is_none() => std::fs::write(p, &outcome.output),
        _ => std::io::stdout().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("schlesinger: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if let Some(e) = &outcome.error {
        eprintln!("schlesinger: {e}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
