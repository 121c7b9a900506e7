//! Selection, optional local search, and final scoring for one graph.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use scndp_core::heuristics::{
    betweenness_select, celf_greedy_select, default_mis_trials, degree_select,
    greedy_mis_select_with, greedy_select, local_search, pagerank_select, MisOptions,
    PAGERANK_DAMPING,
};
use scndp_core::{exact_epc, final_estimate, rega_select, EpcEstimate, Evaluator, NodeSet, StochasticGraph};

use crate::algorithm::Algorithm;
use crate::error::{BenchError, Result};
use crate::record::Timings;

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_LS_SAMPLES: u64 = 10_000;
pub const DEFAULT_FINAL_SAMPLES: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveSettings {
    pub algorithm: Algorithm,
    /// Score everything by full scenario enumeration instead of sampling.
    pub exact: bool,
    pub epsilon: f64,
    pub delta: f64,
    pub local_search: bool,
    pub ls_samples: u64,
    pub final_samples: u64,
    pub mis_trials: Option<usize>,
    pub mis_lazy: bool,
    pub seed: u64,
}

impl SolveSettings {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        Self {
            algorithm,
            exact: false,
            epsilon: DEFAULT_EPSILON,
            delta: DEFAULT_DELTA,
            local_search: false,
            ls_samples: DEFAULT_LS_SAMPLES,
            final_samples: DEFAULT_FINAL_SAMPLES,
            mis_trials: None,
            mis_lazy: false,
            seed,
        }
    }

    fn selection_evaluator(&self) -> Evaluator {
        if self.exact {
            Evaluator::exact().with_seed(self.seed)
        } else {
            Evaluator::csp(self.epsilon, self.delta, self.seed)
        }
    }

    fn search_evaluator(&self) -> Evaluator {
        if self.exact {
            Evaluator::exact().with_seed(self.seed)
        } else {
            Evaluator::csp_fixed(self.ls_samples, self.seed)
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub selection: NodeSet,
    pub epc: EpcEstimate,
    pub seconds: Timings,
}

pub fn select(g: &StochasticGraph, k: usize, settings: &SolveSettings) -> Result<NodeSet> {
    let eval = settings.selection_evaluator();
    let s = match settings.algorithm {
        Algorithm::Greedy => greedy_select(g, k, &eval)?,
        Algorithm::Celf => celf_greedy_select(g, k, &eval)?,
        Algorithm::GreedyMis => {
            let opts = MisOptions {
                trials: settings.mis_trials.unwrap_or_else(|| default_mis_trials(g.n())),
                lazy: settings.mis_lazy,
            };
            greedy_mis_select_with(g, k, opts, &eval, settings.seed)?
        }
        Algorithm::Rega => rega_select(g, k, None)?,
        Algorithm::Degree => degree_select(g, k)?,
        Algorithm::Pagerank => pagerank_select(g, k, PAGERANK_DAMPING)?,
        Algorithm::Betweenness => betweenness_select(g, k)?,
        Algorithm::External => {
            return Err(BenchError::Config("external selections are scored, not solved".into()))
        }
    };
    Ok(s)
}

/// EPC reported for a finished selection.
pub fn score(g: &StochasticGraph, s: &NodeSet, settings: &SolveSettings) -> Result<EpcEstimate> {
    if settings.exact {
        Ok(exact_epc(g, s)?)
    } else {
        Ok(final_estimate(g, s, settings.final_samples, settings.seed)?)
    }
}

pub fn solve(g: &StochasticGraph, k: usize, settings: &SolveSettings) -> Result<SolveOutcome> {
    if k > g.n() {
        return Err(scndp_core::Error::BudgetTooLarge { k, n: g.n() }.into());
    }
    let mut seconds = Timings::default();
    let clock = Instant::now();
    let mut selection = select(g, k, settings)?;
    seconds.select = clock.elapsed().as_secs_f64();

    if settings.local_search {
        let clock = Instant::now();
        selection = local_search(g, &selection, &settings.search_evaluator())?;
        seconds.local_search = clock.elapsed().as_secs_f64();
    }

    let clock = Instant::now();
    let epc = score(g, &selection, settings)?;
    seconds.final_estimate = clock.elapsed().as_secs_f64();
    Ok(SolveOutcome {
        selection,
        epc,
        seconds,
    })
}
