//! Node-selection heuristics and the shared local search.

mod centrality;
mod evaluator;
mod greedy;
mod local_search;
mod mis;

pub use centrality::{
    betweenness_scores, betweenness_select, degree_select, pagerank_scores, pagerank_select,
    top_k, weighted_degrees, PAGERANK_DAMPING,
};
pub use evaluator::{EvalMode, Evaluator};
pub use greedy::{celf_greedy_select, greedy_select, CelfEntry};
pub use local_search::{local_search, local_search_run, LocalSearchOutcome};
pub use mis::{
    default_mis_trials, greedy_mis_select, greedy_mis_select_with, maximal_independent_set,
    maximal_independent_set_from_order, mis_order, MisOptions,
};

/// Deletion budget used when none is given: `⌈0.1·n⌉`.
pub fn default_budget(n: usize) -> usize {
    n.div_ceil(10)
}
