use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isofix_cli::{run_scenario_file, run_suite, RunOptions};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "isofix", version, about = "Fixed points of isometry groups and inner derivation witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        opts: Flags,
    },
    /// Run every `*.json` scenario in a directory.
    Suite {
        dir: PathBuf,
        #[command(flatten)]
        opts: Flags,
    },
}

#[derive(Args)]
struct Flags {
    /// Seed for randomized instances; overrides the scenario's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance; overrides the scenario's tol.
    #[arg(long)]
    tol: Option<f64>,
    /// Directory for CSV iteration traces.
    #[arg(long)]
    trace_dir: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

impl Flags {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            tol: self.tol,
            trace_dir: self.trace_dir.clone(),
        }
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())? + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, written) = match &cli.command {
        Command::Run { file, opts } => {
            let report = run_scenario_file(file, &opts.options());
            let r = &report.result;
            eprintln!(
                "{}: {:?} (exit {}){}",
                r.name,
                r.status,
                r.exit_code,
                r.error.as_deref().map(|e| format!(": {e}")).unwrap_or_default()
            );
            (r.exit_code, emit(&report, opts.json_out.as_deref()))
        }
        Command::Suite { dir, opts } => match run_suite(dir, &opts.options()) {
            Ok(suite) => {
                for s in &suite.summary.scenarios {
                    eprintln!(
                        "{} {} ({:?}, expected {:?})",
                        if s.passed { "PASS" } else { "FAIL" },
                        s.file,
                        s.status,
                        s.expected
                    );
                }
                eprintln!("{} passed, {} failed", suite.summary.passed, suite.summary.failed);
                (suite.summary.exit_code, emit(&suite, opts.json_out.as_deref()))
            }
            Err(e) => {
                eprintln!("{e}");
                (e.status().exit_code(), Ok(()))
            }
        },
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
