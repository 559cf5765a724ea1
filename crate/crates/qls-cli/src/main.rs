//! qls-smash: decide (semi)primeness of smash products A#B and evaluate their
//! structure from JSON job configs. JSON report goes to stdout, a one-line
//! human summary to stderr.

use std::fs;
use std::process::ExitCode;

use clap::Parser;
use qls_core::pipeline::{self, Command};

#[derive(Parser)]
#[command(
    name = "qls-smash",
    version,
    about = "Smash products of quantum affine spaces with bosonized quantum linear spaces"
)]
struct Cli {
    /// validate | hopf-check | invariants | semiprime | prime | smash-eval
    command: String,

    /// Path to a JSON job config
    #[arg(long)]
    config: String,

    /// Override the config's search degree cap
    #[arg(long)]
    degree_cap: Option<u32>,

    /// Exit with code 3 when the decision is Unknown
    #[arg(long)]
    strict: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(command) = Command::parse(&cli.command) else {
        eprintln!(
            "error: unknown command '{}'; expected one of validate, hopf-check, invariants, semiprime, prime, smash-eval",
            cli.command
        );
        return ExitCode::from(2);
    };
    let text = match fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.config);
            return ExitCode::from(2);
        }
    };
    let outcome = pipeline::run(command, &text, cli.degree_cap, cli.strict);
    println!(
        "{}",
        serde_json::to_string_pretty(&outcome.report).expect("report serialization")
    );
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.exit as u8)
}
