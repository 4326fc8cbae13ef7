use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] isofix_core::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Outcome class of a scenario or instance, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NonConvergence,
    Inconsistent,
    SchemaError,
    /// A check that holds by construction failed, or the report disagrees
    /// with the solver.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::NonConvergence => 2,
            Status::Inconsistent => 3,
            Status::SchemaError => 4,
        }
    }
}

impl RunError {
    pub fn status(&self) -> Status {
        match self {
            RunError::Io { .. } | RunError::Schema(_) => Status::SchemaError,
            RunError::Internal(_) => Status::Failed,
            RunError::Core(e) => core_status(e),
        }
    }
}

pub fn core_status(e: &isofix_core::Error) -> Status {
    use isofix_core::Error as E;
    match e {
        E::CocycleInconsistent { .. } | E::Invariance(_) => Status::Inconsistent,
        E::ClosureCap { .. } => Status::NonConvergence,
        E::Dimension(_) | E::Domain(_) | E::Invalid(_) => Status::SchemaError,
    }
}
