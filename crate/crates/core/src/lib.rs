//! Stochastic critical node detection: choose `k` nodes to delete from a graph
//! with independent edge failures so that the expected number of connected
//! node pairs in what remains is as small as possible.
//!
//! The crate provides the graph model ([`StochasticGraph`]), exact and sampled
//! expected pairwise connectivity ([`epc`]), the LP-rounding solver
//! ([`rega`]), the heuristic baselines ([`heuristics`]) and seeded instance
//! generators ([`generators`]).

pub mod epc;
pub mod error;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod lp;
pub mod rega;
pub mod rng;

pub use epc::{
    csp_estimate, csp_estimate_fixed, epc_lower_bound, exact_epc, final_estimate, sample_count,
    EpcEstimate, Method,
};
pub use error::{Error, Result};
pub use graph::{components, pairs, InducedSubgraph, NodeSet, Scenario, StochasticGraph};
pub use heuristics::{default_budget, EvalMode, Evaluator};
pub use rega::{rega_run, rega_select, RegaOutcome};
