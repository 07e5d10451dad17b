//! `metricid`: verify metric identities symbolically and on point sets.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use metricid::combinatorics::DEFAULT_ENUMERATION_BUDGET;

use commands::UsageError;
use report::RunReport;

#[derive(Parser)]
#[command(name = "metricid", version, about = "Verify metric identities in inner product spaces")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of subsets an enumeration may visit.
    #[arg(long, global = true, env = "METRICID_ENUMERATION_BUDGET", default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity symbolically over a range of arities.
    Verify {
        /// Catalog name, or `all`.
        #[arg(long)]
        identity: String,
        /// Arity `N` or inclusive range `A..B`.
        #[arg(long)]
        n: String,
    },
    /// Print the coefficient tables of the k-subset midpoint sum.
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate an identity on the points in a JSON file.
    Residual {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        identity: String,
    },
    /// Render an identity as LaTeX.
    Latex {
        #[arg(long)]
        identity: String,
        #[arg(long)]
        n: usize,
    },
    /// Run the built-in acceptance criteria.
    Selftest,
}

enum Outcome {
    Report(RunReport),
    Text(String),
}

fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    Ok(match &cli.command {
        Command::Verify { identity, n } => Outcome::Report(commands::verify(identity, n, cli.budget)?),
        Command::Coeffs { n, k, oracle } => Outcome::Report(commands::coeffs(*n, *k, *oracle, cli.budget)?),
        Command::Residual { file, identity } => Outcome::Report(commands::residual(file, identity)?),
        Command::Latex { identity, n } => match commands::latex(identity, *n)? {
            Ok(text) => Outcome::Text(text),
            Err(report) => Outcome::Report(report),
        },
        Command::Selftest => Outcome::Report(commands::selftest()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let (text, ok) = match outcome {
        Outcome::Text(latex) if cli.json => (serde_json::json!({ "latex": latex }).to_string() + "\n", true),
        Outcome::Text(latex) => (latex + "\n", true),
        Outcome::Report(mut report) => {
            report.duration_ms = start.elapsed().as_millis();
            let ok = report.all_passed();
            let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            (text, ok)
        }
    };
    let _ = stdout.write_all(text.as_bytes());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
