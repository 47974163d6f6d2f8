use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orderforge::{check_report, run_source, CliError, Report, RunOptions};

#[derive(Parser)]
#[command(name = "orderforge", version, about = "Run and re-check orderforge task files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a task file and report the results.
    Run {
        taskfile: PathBuf,
        /// Seed for randomized searches.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for intra-task parallelism.
        #[arg(long)]
        threads: Option<usize>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// A prior report whose hash the new run must reproduce.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Re-verify a saved JSON report.
    Check {
        report: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Run {
            taskfile,
            seed,
            threads,
            out,
            check,
        } => {
            let source = read(&taskfile)?;
            let report = run_source(&source, RunOptions { seed, threads })?;
            print!("{}", report.to_text());
            if let Some(path) = out {
                std::fs::write(&path, report.to_json()).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            let mut code = report.exit_code();
            if let Some(prior) = check {
                let prior = Report::from_json(&read(&prior)?)?;
                if prior.compute_hash() != prior.hash {
                    println!("check: prior report contents do not match its recorded hash");
                    code = code.max(1);
                } else if prior.hash != report.hash {
                    println!("check: hash {} differs from prior report {}", report.hash, prior.hash);
                    code = code.max(1);
                } else {
                    println!("check: matches prior report");
                }
            }
            Ok(code)
        }
        Command::Check { report, threads } => {
            let outcome = check_report(&read(&report)?, threads)?;
            for p in &outcome.problems {
                println!("problem: {p}");
            }
            if outcome.problems.is_empty() {
                println!("report verified");
            }
            Ok(outcome.exit_code())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
