use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pd4_algebra::cli::{run, Command};

/// Exact group-ring and Fox-calculus computations; every command prints a JSON report.
#[derive(Parser)]
#[command(name = "pd4", version)]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print nothing; only the exit code reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli.command);
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports are valid JSON");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else if !cli.quiet {
        // a closed pipe downstream is not an error of the computation
        let _ = writeln!(std::io::stdout(), "{text}");
    }
    ExitCode::from(outcome.code as u8)
}
