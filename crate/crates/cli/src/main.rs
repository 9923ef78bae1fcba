//! eisenbox: exact power-series expansions of algebraic functions,
//! Eisenstein denominator certificates, weighted graded lifting, D-finite
//! diagnostics and Weierstrass division.
//!
//! Exit codes: 0 success, 2 input error, 3 mathematical obstruction
//! (extension required, non-squarefree input, regularity failure, ...).

mod commands;
mod input;
mod render;

use clap::Parser;
use eisenbox::error::ErrorKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "eisenbox", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Lift the input-size guard (cap <= 2000, at most 6 variables).
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: commands::Command,
}

fn main() {
    // `eisenstein --poly ...` defaults to the certify verb
    let mut argv: Vec<String> = std::env::args().collect();
    if let Some(i) = argv.iter().position(|a| a == "eisenstein") {
        if argv.get(i + 1).map(|a| a.starts_with("--")).unwrap_or(false) {
            argv.insert(i + 1, "certify".into());
        }
    }
    let cli = Cli::parse_from(argv);
    match commands::run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Math => 3,
            };
            std::process::exit(code);
        }
    }
}
