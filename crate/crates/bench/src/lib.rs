//! Command-line front end and experiment harness for the `scndp-core`
//! solvers.

pub mod algorithm;
pub mod bench;
pub mod cli;
pub mod config;
pub mod error;
pub mod record;
pub mod runner;
pub mod selection;

use std::path::Path;

use scndp_core::StochasticGraph;

pub use algorithm::Algorithm;
pub use config::ExperimentConfig;
pub use error::{BenchError, Result};
pub use record::{RunRecord, Status, Timings};
pub use runner::{solve, SolveSettings};

/// Reads a graph file. A missing or unreadable file is an input error.
pub fn load_graph(path: &Path) -> Result<StochasticGraph> {
    let text = error::read_text(path)?;
    Ok(StochasticGraph::read_from(text.as_bytes())?)
}
