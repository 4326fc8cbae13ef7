use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{RunError, Status};
use crate::kinds;
use crate::scenario::{parse_scenario, Expectation, Scenario, ScenarioKind};

/// Command-line overrides applied to every scenario.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub trace_dir: Option<PathBuf>,
}

/// Everything except `timing` is a deterministic function of the scenario,
/// the seed and the options.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Value,
    pub result: ResultBlock,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBlock {
    pub name: String,
    pub kind: String,
    pub seed: u64,
    pub tol: f64,
    pub status: Status,
    pub exit_code: i32,
    pub expected: Expectation,
    pub passed: bool,
    /// Largest residual over all instances, recomputed at report time.
    pub residual: Option<f64>,
    pub error: Option<String>,
    pub warnings: Vec<String>,
    pub trace_files: Vec<String>,
    pub instances: Vec<Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// What a kind runner hands back.
#[derive(Debug, Default)]
pub struct KindOutcome {
    pub instances: Vec<Value>,
    pub statuses: Vec<Status>,
    pub residual: Option<f64>,
    pub warnings: Vec<String>,
    pub trace_files: Vec<String>,
    pub error: Option<String>,
}

impl KindOutcome {
    pub fn push<T: Serialize>(&mut self, instance: &T, status: Status) {
        self.instances
            .push(serde_json::to_value(instance).expect("instance records serialize"));
        self.statuses.push(status);
    }

    pub fn absorb_residual(&mut self, r: f64) {
        self.residual = Some(self.residual.map_or(r, |cur| cur.max(r)));
    }
}

/// Per-scenario context shared by the kind runners.
pub struct Context<'a> {
    pub name: &'a str,
    pub seed: u64,
    pub tol: f64,
    pub trace_dir: Option<&'a Path>,
}

impl Context<'_> {
    pub fn write_trace(&self, file: String, csv: &str) -> Result<String, RunError> {
        let Some(dir) = self.trace_dir else {
            return Ok(file);
        };
        std::fs::create_dir_all(dir).map_err(|source| RunError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let path = dir.join(&file);
        std::fs::write(&path, csv).map_err(|source| RunError::Io { path, source })?;
        Ok(file)
    }
}

fn passed(status: Status, expected: Expectation) -> bool {
    matches!(
        (status, expected),
        (Status::Ok, Expectation::Ok)
            | (Status::NonConvergence, Expectation::NonConvergence)
            | (Status::Inconsistent, Expectation::Inconsistent)
            | (Status::SchemaError, Expectation::SchemaError)
    )
}

fn scenario_stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "scenario".into(), |s| s.to_string_lossy().into_owned())
}

fn failed_report(name: String, scenario: Value, expected: Expectation, seed: u64, tol: f64, err: &RunError, start: Instant) -> Report {
    let status = err.status();
    Report {
        scenario,
        result: ResultBlock {
            name,
            kind: "unknown".into(),
            seed,
            tol,
            status,
            exit_code: status.exit_code(),
            expected,
            passed: passed(status, expected),
            residual: None,
            error: Some(err.to_string()),
            warnings: Vec::new(),
            trace_files: Vec::new(),
            instances: Vec::new(),
        },
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    }
}

/// Loads, validates and runs one scenario file. Never panics on bad input;
/// schema problems come back as a report with exit code 4.
pub fn run_scenario_file(path: &Path, opts: &RunOptions) -> Report {
    let start = Instant::now();
    let seed = opts.seed.unwrap_or(0);
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(source) => {
            let err = RunError::Io {
                path: path.to_path_buf(),
                source,
            };
            return failed_report(scenario_stem(path), Value::Null, Expectation::Ok, seed, f64::NAN, &err, start);
        }
    };
    match parse_scenario(&text) {
        Ok(scenario) => run_scenario(&scenario, opts),
        Err(err) => failed_report(scenario_stem(path), Value::Null, Expectation::Ok, seed, f64::NAN, &err, start),
    }
}

pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Report {
    let start = Instant::now();
    let seed = opts.seed.or(scenario.seed).unwrap_or(0);
    let tol = opts.tol.or(scenario.tol).unwrap_or_else(|| scenario.kind.default_tol());
    let echo = serde_json::to_value(scenario).unwrap_or(Value::Null);
    if !(tol > 0.0 && tol.is_finite()) {
        let err = RunError::Schema(format!("tolerance must be positive and finite, got {tol}"));
        return failed_report(scenario.name.clone(), echo, scenario.expect, seed, tol, &err, start);
    }
    let ctx = Context {
        name: &scenario.name,
        seed,
        tol,
        trace_dir: opts.trace_dir.as_deref(),
    };
    let outcome = match &scenario.kind {
        ScenarioKind::BoxFixedPoint(s) => kinds::boxes::run(s, &ctx),
        ScenarioKind::FiberFixedPoint(s) => kinds::fiber::run(s, &ctx),
        ScenarioKind::MatrixDerivation(s) => kinds::matrix::run(s, &ctx),
        ScenarioKind::GroupAlgebraDerivation(s) => kinds::group_algebra::run(s, &ctx),
        ScenarioKind::UrnsCertificate(s) => kinds::urns::run(s, &ctx),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(err) => {
            let mut report = failed_report(scenario.name.clone(), echo, scenario.expect, seed, tol, &err, start);
            report.result.kind = scenario.kind.label().into();
            return report;
        }
    };
    let status = outcome.statuses.iter().copied().max().unwrap_or(Status::Ok);
    // a scenario meets its expectation only if every instance does
    let all_match = outcome.statuses.iter().all(|&s| passed(s, scenario.expect))
        && (!outcome.statuses.is_empty() || scenario.expect == Expectation::Ok);
    Report {
        scenario: echo,
        result: ResultBlock {
            name: scenario.name.clone(),
            kind: scenario.kind.label().into(),
            seed,
            tol,
            status,
            exit_code: status.exit_code(),
            expected: scenario.expect,
            passed: all_match,
            residual: outcome.residual,
            error: outcome.error,
            warnings: outcome.warnings,
            trace_files: outcome.trace_files,
            instances: outcome.instances,
        },
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub file: String,
    pub name: String,
    pub status: Status,
    pub expected: Expectation,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub scenarios: Vec<SuiteEntry>,
    pub passed: usize,
    pub failed: usize,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub summary: SuiteSummary,
    pub reports: Vec<Report>,
    pub timing: Timing,
}

/// Runs every `*.json` file of `dir` in parallel; results come back in file
/// name order regardless of scheduling.
pub fn run_suite(dir: &Path, opts: &RunOptions) -> Result<SuiteReport, RunError> {
    let start = Instant::now();
    let entries = std::fs::read_dir(dir).map_err(|source| RunError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let reports: Vec<Report> = files.par_iter().map(|f| run_scenario_file(f, opts)).collect();
    let scenarios: Vec<SuiteEntry> = files
        .iter()
        .zip(&reports)
        .map(|(f, r)| SuiteEntry {
            file: f.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned()),
            name: r.result.name.clone(),
            status: r.result.status,
            expected: r.result.expected,
            passed: r.result.passed,
        })
        .collect();
    let failed = scenarios.iter().filter(|s| !s.passed).count();
    let exit_code = scenarios
        .iter()
        .filter(|s| !s.passed)
        .map(|s| match s.status {
            Status::Ok => 1,
            other => other.exit_code(),
        })
        .max()
        .unwrap_or(0);
    Ok(SuiteReport {
        summary: SuiteSummary {
            passed: scenarios.len() - failed,
            failed,
            exit_code,
            scenarios,
        },
        reports,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}
