//! Scenario runner for the fixed-point and derivation solvers: JSON
//! scenarios in, JSON reports and CSV traces out.

pub mod error;
mod kinds;
pub mod runner;
pub mod scenario;
pub mod verify;

pub use error::{RunError, Status};
pub use runner::{run_scenario, run_scenario_file, run_suite, Report, ResultBlock, RunOptions, SuiteReport};
pub use scenario::{parse_scenario, Expectation, Scenario};
