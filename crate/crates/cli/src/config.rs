use std::path::{Path, PathBuf};
use std::time::Duration;

use qcolour_core::hypergraph::{BuildLimits, DEFAULT_MAX_EDGES};
use serde::Deserialize;

use crate::args::GlobalArgs;
use crate::budget::Limits;
use crate::error::{CliError, Result};

pub const DEFAULT_TIME_BUDGET_SECS: f64 = 600.0;

/// Optional JSON config file. Environment variables override it and flags
/// override both.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub time_budget_secs: Option<f64>,
    pub node_budget: Option<u64>,
    pub max_edges: Option<u64>,
    pub threads: Option<usize>,
    pub catalog: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub limits: Limits,
    pub build: BuildLimits,
    /// 0 lets the thread pool pick.
    pub threads: usize,
    pub catalog: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let secs = args.time_budget.or(file.time_budget_secs).unwrap_or(DEFAULT_TIME_BUDGET_SECS);
        if !(secs > 0.0 && secs.is_finite()) {
            return Err(CliError::input("the time budget must be a positive number of seconds"));
        }
        Ok(Settings {
            limits: Limits {
                time: Some(Duration::from_secs_f64(secs)),
                nodes: args.node_budget.or(file.node_budget),
            },
            build: BuildLimits {
                max_edges: args.max_edges.or(file.max_edges).map_or(DEFAULT_MAX_EDGES, u128::from),
            },
            threads: args.threads.or(file.threads).unwrap_or(0),
            catalog: args.catalog.clone().or(file.catalog),
        })
    }
}
