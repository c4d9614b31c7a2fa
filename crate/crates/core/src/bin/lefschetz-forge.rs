use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lefschetz_forge::DEFAULT_PRIME;
use lefschetz_forge::lab::{self, Params, ScenarioId};

#[derive(Parser)]
#[command(name = "lefschetz-forge", version, about = "Hilbert functions and Lefschetz properties of point configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a scenario, analyze it and print the JSON report.
    Run {
        id: String,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a script for an external computer-algebra system.
        #[arg(long)]
        export_cas: Option<PathBuf>,
        /// Report elapsed_ms as 0 so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// List the scenarios with their parameter ranges.
    List,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            for s in lab::list_scenarios() {
                let default = s.default_d.map_or(String::new(), |d| format!(" (default {d})"));
                println!("{:<8} {:<14} {}", s.id.as_str(), format!("{}{default}", s.constraint), s.claim);
            }
            ExitCode::SUCCESS
        }
        Command::Run { id, d, prime, seed, trials, cutoff, out, export_cas, no_timing } => {
            let params = Params { d, prime, seed, trials, cutoff, timing: !no_timing };
            let result = id.parse::<ScenarioId>().and_then(|id| {
                let report = lab::run(id, &params)?;
                let json = report.to_json();
                match &out {
                    Some(path) => std::fs::write(path, format!("{json}\n"))?,
                    None => println!("{json}"),
                }
                if let Some(path) = &export_cas {
                    lab::write_cas(&report, path)?;
                }
                Ok(report)
            });
            match result {
                Ok(report) => {
                    for c in report.failed_checks() {
                        eprintln!("mismatch: {}: expected {}, observed {}", c.name, c.expected, c.observed);
                    }
                    ExitCode::from(report.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {id} (seed {seed}): {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
