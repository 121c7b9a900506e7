//! 2-exchange local search over deletion sets.

use super::Evaluator;
use crate::error::Result;
use crate::graph::{NodeSet, StochasticGraph};

#[derive(Debug, Clone)]
pub struct LocalSearchOutcome {
    pub selection: NodeSet,
    /// Estimated EPC of `selection` under the search seed.
    pub value: f64,
    pub swaps: usize,
    pub sweeps: usize,
}

/// Swaps a member `u` of the deletion set for an outside node `v` whenever
/// that strictly lowers the estimated EPC, applying each improving swap as
/// soon as it is found. Stops after a sweep with no improvement.
///
/// All estimates use one sampling seed, so every comparison shares its
/// random numbers and the search cannot cycle.
pub fn local_search(g: &StochasticGraph, s: &NodeSet, eval: &Evaluator) -> Result<NodeSet> {
    local_search_run(g, s, eval).map(|o| o.selection)
}

pub fn local_search_run(
    g: &StochasticGraph,
    s: &NodeSet,
    eval: &Evaluator,
) -> Result<LocalSearchOutcome> {
    s.validate_for(g.n())?;
    eval.check(g)?;
    let n = g.n();
    let seed = eval.stream("local-search");
    let mut deleted = s.to_mask(n);
    let mut members: Vec<usize> = s.iter().collect();
    let mut current = eval.sigma_mask(g, &deleted, seed)?;
    let mut swaps = 0;
    let mut sweeps = 0;
    if members.is_empty() || members.len() == n {
        return Ok(LocalSearchOutcome {
            selection: s.clone(),
            value: current,
            swaps,
            sweeps,
        });
    }
    loop {
        sweeps += 1;
        let mut improved = false;
        for slot in 0..members.len() {
            for v in 0..n {
                if deleted[v] {
                    continue;
                }
                let u = members[slot];
                deleted[u] = false;
                deleted[v] = true;
                let value = eval.sigma_mask(g, &deleted, seed)?;
                if value < current {
                    members[slot] = v;
                    current = value;
                    improved = true;
                    swaps += 1;
                } else {
                    deleted[v] = false;
                    deleted[u] = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok(LocalSearchOutcome {
        selection: NodeSet::from_mask(&deleted),
        value: current,
        swaps,
        sweeps,
    })
}
