//! Greedy over a kept set seeded by a random maximal independent set.
//!
//! A trial draws a maximal independent set (MIS), grows or shrinks it one node
//! at a time until it has exactly `n − k` nodes while keeping the EPC of the
//! kept subgraph as small as possible, and deletes the rest. The best of
//! several trials is returned.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::greedy::{argmax_gain, check_budget, LazyQueue};
use super::Evaluator;
use crate::error::{Error, Result};
use crate::graph::{NodeSet, StochasticGraph};
use crate::rng::{derive, derive_str, rng_for};

/// Trial count used when none is configured: 40 up to 100 nodes, 20 above.
pub fn default_mis_trials(n: usize) -> usize {
    if n <= 100 {
        40
    } else {
        20
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MisOptions {
    pub trials: usize,
    /// Re-score only the head of a lazy queue during grow/shrink steps.
    pub lazy: bool,
}

impl MisOptions {
    pub fn new(trials: usize) -> Self {
        Self {
            trials,
            lazy: false,
        }
    }
}

/// Scans nodes in `order` and keeps each one with no kept neighbor.
/// Edge probabilities play no role.
pub fn maximal_independent_set_from_order(g: &StochasticGraph, order: &[usize]) -> NodeSet {
    let mut inside = vec![false; g.n()];
    let mut blocked = vec![false; g.n()];
    for &v in order {
        if blocked[v] || inside[v] {
            continue;
        }
        inside[v] = true;
        for &(w, _) in g.neighbors(v) {
            blocked[w] = true;
        }
    }
    NodeSet::from_mask(&inside)
}

/// Node order used by [`maximal_independent_set`] for `seed`.
pub fn mis_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng_for(seed));
    order
}

pub fn maximal_independent_set(g: &StochasticGraph, seed: u64) -> NodeSet {
    maximal_independent_set_from_order(g, &mis_order(g.n(), seed))
}

pub fn greedy_mis_select(
    g: &StochasticGraph,
    k: usize,
    trials: usize,
    eval: &Evaluator,
    seed: u64,
) -> Result<NodeSet> {
    greedy_mis_select_with(g, k, MisOptions::new(trials), eval, seed)
}

pub fn greedy_mis_select_with(
    g: &StochasticGraph,
    k: usize,
    opts: MisOptions,
    eval: &Evaluator,
    seed: u64,
) -> Result<NodeSet> {
    check_budget(g, k)?;
    eval.check(g)?;
    if opts.trials == 0 {
        return Err(Error::InvalidParameter("at least one MIS trial is required".into()));
    }
    let deletions: Vec<NodeSet> = (0..opts.trials)
        .into_par_iter()
        .map(|t| run_trial(g, k, opts.lazy, eval, seed, t))
        .collect::<Result<_>>()?;

    let compare_seed = derive_str(eval.stream("mis"), "compare");
    let mut best: Option<(f64, &NodeSet)> = None;
    for d in &deletions {
        let value = eval.sigma(g, d, compare_seed)?;
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, d));
        }
    }
    Ok(best.expect("trials >= 1").1.clone())
}

/// Deletion set from one trial.
pub fn run_trial(
    g: &StochasticGraph,
    k: usize,
    lazy: bool,
    eval: &Evaluator,
    seed: u64,
    trial: usize,
) -> Result<NodeSet> {
    let n = g.n();
    let target = n - k;
    let mis = maximal_independent_set(g, derive(seed, trial as u64));
    let mut kept = mis.to_mask(n);
    let mut size = mis.len();
    let stream = derive(eval.stream("mis"), trial as u64);

    // gain of toggling j: σ(current kept) − σ(kept with j toggled); larger is better
    let toggled_gain = |kept: &[bool], j: usize, seed: u64, base: f64| -> Result<f64> {
        let mut deleted: Vec<bool> = kept.iter().map(|&x| !x).collect();
        deleted[j] = !deleted[j];
        Ok(base - eval.sigma_mask(g, &deleted, seed)?)
    };
    let sigma_kept = |kept: &[bool], seed: u64| -> Result<f64> {
        let deleted: Vec<bool> = kept.iter().map(|&x| !x).collect();
        eval.sigma_mask(g, &deleted, seed)
    };

    let growing = size < target;
    let steps = size.abs_diff(target);
    let mut queue: Option<LazyQueue> = None;
    for step in 0..steps {
        let step_seed = derive(stream, step as u64);
        // growing adds an outside node; shrinking drops a kept one
        let candidates: Vec<usize> = (0..n).filter(|&j| kept[j] != growing).collect();
        let base = sigma_kept(&kept, step_seed)?;
        let v = if lazy {
            match queue.as_mut() {
                None => {
                    let scored: Vec<(usize, f64)> = candidates
                        .iter()
                        .map(|&j| Ok((j, toggled_gain(&kept, j, step_seed, base)?)))
                        .collect::<Result<_>>()?;
                    let mut q = LazyQueue::new(scored);
                    let v = q.pop_best(0, |_| unreachable!())?;
                    queue = Some(q);
                    v
                }
                Some(q) => q.pop_best(step, |j| toggled_gain(&kept, j, step_seed, base))?,
            }
        } else {
            let scored: Vec<(usize, f64)> = candidates
                .par_iter()
                .map(|&j| Ok((j, toggled_gain(&kept, j, step_seed, base)?)))
                .collect::<Result<_>>()?;
            argmax_gain(&scored)
        }
        .expect("a candidate exists while sizes differ");
        kept[v] = growing;
        size = if growing { size + 1 } else { size - 1 };
        if let Some(q) = queue.as_mut() {
            q.remove(v);
        }
    }
    debug_assert_eq!(size, target);
    Ok(NodeSet::from_mask(&kept).complement(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epc::exact_epc;

    fn is_independent(g: &StochasticGraph, s: &NodeSet) -> bool {
        g.edges().iter().all(|&(u, v)| !(s.contains(u) && s.contains(v)))
    }

    fn is_maximal(g: &StochasticGraph, s: &NodeSet) -> bool {
        (0..g.n()).all(|v| s.contains(v) || g.neighbors(v).iter().any(|&(w, _)| s.contains(w)))
    }

    #[test]
    fn edgeless_graph_keeps_everything() {
        let g = StochasticGraph::new(5, []).unwrap();
        assert_eq!(maximal_independent_set(&g, 1).len(), 5);
    }

    #[test]
    fn complete_graph_keeps_one() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v, 0.5));
            }
        }
        let g = StochasticGraph::new(5, edges).unwrap();
        for seed in 0..10 {
            assert_eq!(maximal_independent_set(&g, seed).len(), 1);
        }
    }

    #[test]
    fn path_depends_on_first_node() {
        let g = StochasticGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let mut saw = [false, false];
        for seed in 0..64 {
            let order = mis_order(3, seed);
            let mis = maximal_independent_set(&g, seed);
            if order[0] == 1 {
                assert_eq!(mis.as_slice(), &[1]);
                saw[0] = true;
            } else {
                assert_eq!(mis.as_slice(), &[0, 2]);
                saw[1] = true;
            }
        }
        assert!(saw[0] && saw[1]);
    }

    #[test]
    fn mis_is_independent_and_maximal() {
        let edges: Vec<_> = (0..30usize)
            .flat_map(|u| [(u, (u + 1) % 30), (u, (u + 7) % 30)])
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|(u, v)| (u, v, 0.5))
            .collect();
        let g = StochasticGraph::new(30, edges).unwrap();
        for seed in 0..20 {
            let s = maximal_independent_set(&g, seed);
            assert!(is_independent(&g, &s));
            assert!(is_maximal(&g, &s));
        }
    }

    #[test]
    fn star_deletes_hub() {
        let g = StochasticGraph::new(5, (1..5).map(|v| (0, v, 1.0))).unwrap();
        for trial in 0..5 {
            let d = run_trial(&g, 1, false, &Evaluator::exact(), 9, trial).unwrap();
            assert_eq!(d.as_slice(), &[0]);
        }
        let d = greedy_mis_select(&g, 1, 3, &Evaluator::exact(), 4).unwrap();
        assert_eq!(d.as_slice(), &[0]);
        assert_eq!(exact_epc(&g, &d).unwrap().value, 0.0);
    }

    #[test]
    fn deletion_has_budget_size_and_is_reproducible() {
        let g = StochasticGraph::new(
            8,
            [(0, 1, 0.5), (1, 2, 0.7), (2, 3, 0.9), (3, 4, 0.4), (4, 5, 0.6), (5, 6, 0.8), (6, 7, 0.3), (0, 7, 0.5), (1, 5, 0.6)],
        )
        .unwrap();
        for k in 0..=8 {
            for lazy in [false, true] {
                let opts = MisOptions { trials: 3, lazy };
                let a = greedy_mis_select_with(&g, k, opts, &Evaluator::csp(0.1, 0.05, 2), 5).unwrap();
                let b = greedy_mis_select_with(&g, k, opts, &Evaluator::csp(0.1, 0.05, 2), 5).unwrap();
                assert_eq!(a.len(), k);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let g = StochasticGraph::new(2, [(0, 1, 0.5)]).unwrap();
        assert!(greedy_mis_select(&g, 1, 0, &Evaluator::exact(), 0).is_err());
    }
}
