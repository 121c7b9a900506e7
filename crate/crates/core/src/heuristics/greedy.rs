//! Greedy deletion from the empty set, with an optional lazy (CELF) queue.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::Evaluator;
use crate::error::{Error, Result};
use crate::graph::{NodeSet, StochasticGraph};
use crate::rng::derive;

/// Queue entry: a candidate with the gain last computed for it and the round
/// that computation belongs to.
#[derive(Debug, Clone, Copy)]
pub struct CelfEntry {
    pub node: usize,
    pub gain: f64,
    pub round: usize,
}

impl PartialEq for CelfEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CelfEntry {}

impl PartialOrd for CelfEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CelfEntry {
    // max-heap: larger gain first, then smaller node id
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Lazy argmax over rounds. Candidates whose cached gain is from an earlier
/// round are re-scored only when they reach the head of the queue.
pub(crate) struct LazyQueue {
    heap: BinaryHeap<CelfEntry>,
}

impl LazyQueue {
    /// Seeds the queue with gains computed in round 0.
    pub(crate) fn new(gains: impl IntoIterator<Item = (usize, f64)>) -> Self {
        Self {
            heap: gains
                .into_iter()
                .map(|(node, gain)| CelfEntry {
                    node,
                    gain,
                    round: 0,
                })
                .collect(),
        }
    }

    /// Pops the best candidate for `round`, re-scoring stale heads with
    /// `score`. The returned node leaves the queue.
    pub(crate) fn pop_best(
        &mut self,
        round: usize,
        mut score: impl FnMut(usize) -> Result<f64>,
    ) -> Result<Option<usize>> {
        while let Some(top) = self.heap.pop() {
            if top.round == round {
                return Ok(Some(top.node));
            }
            let gain = score(top.node)?;
            self.heap.push(CelfEntry {
                node: top.node,
                gain,
                round,
            });
        }
        Ok(None)
    }

    /// Drops a candidate that became ineligible.
    pub(crate) fn remove(&mut self, node: usize) {
        self.heap.retain(|e| e.node != node);
    }
}

/// Highest-gain candidate; ties go to the smallest id. `scored` must be in
/// ascending id order.
pub(crate) fn argmax_gain(scored: &[(usize, f64)]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for &(v, gain) in scored {
        if best.is_none_or(|(_, b)| gain > b) {
            best = Some((v, gain));
        }
    }
    best.map(|(v, _)| v)
}

/// Gain `σ(S) − σ(S ∪ {j})` for every `j ∉ S`, in id order.
pub(crate) fn score_all(
    g: &StochasticGraph,
    deleted: &[bool],
    eval: &Evaluator,
    seed: u64,
    base: f64,
) -> Result<Vec<(usize, f64)>> {
    let candidates: Vec<usize> = (0..g.n()).filter(|&j| !deleted[j]).collect();
    candidates
        .par_iter()
        .map(|&j| {
            let mut mask = deleted.to_vec();
            mask[j] = true;
            Ok((j, base - eval.sigma_mask(g, &mask, seed)?))
        })
        .collect()
}

fn round_seed(eval: &Evaluator, round: usize) -> u64 {
    derive(eval.stream("greedy"), round as u64)
}

/// Adds, `k` times, the node whose deletion lowers the estimated EPC most.
/// All candidates of a round share one sampling seed.
pub fn greedy_select(g: &StochasticGraph, k: usize, eval: &Evaluator) -> Result<NodeSet> {
    check_budget(g, k)?;
    eval.check(g)?;
    let mut deleted = vec![false; g.n()];
    for round in 0..k {
        let seed = round_seed(eval, round);
        let base = eval.sigma_mask(g, &deleted, seed)?;
        let scored = score_all(g, &deleted, eval, seed, base)?;
        let v = argmax_gain(&scored).expect("k <= n leaves a candidate");
        deleted[v] = true;
    }
    Ok(NodeSet::from_mask(&deleted))
}

/// Same contract as [`greedy_select`]; after the first full scan only the
/// queue head is re-evaluated until its gain is current.
pub fn celf_greedy_select(g: &StochasticGraph, k: usize, eval: &Evaluator) -> Result<NodeSet> {
    check_budget(g, k)?;
    eval.check(g)?;
    let mut deleted = vec![false; g.n()];
    if k == 0 {
        return Ok(NodeSet::empty());
    }
    let seed0 = round_seed(eval, 0);
    let base0 = eval.sigma_mask(g, &deleted, seed0)?;
    let mut queue = LazyQueue::new(score_all(g, &deleted, eval, seed0, base0)?);
    for round in 0..k {
        let seed = round_seed(eval, round);
        let mut base = (round == 0).then_some(base0);
        let v = queue
            .pop_best(round, |j| {
                let b = match base {
                    Some(b) => b,
                    None => *base.insert(eval.sigma_mask(g, &deleted, seed)?),
                };
                let mut mask = deleted.clone();
                mask[j] = true;
                Ok(b - eval.sigma_mask(g, &mask, seed)?)
            })?
            .expect("k <= n leaves a candidate");
        deleted[v] = true;
    }
    Ok(NodeSet::from_mask(&deleted))
}

pub(crate) fn check_budget(g: &StochasticGraph, k: usize) -> Result<()> {
    if k > g.n() {
        return Err(Error::BudgetTooLarge { k, n: g.n() });
    }
    Ok(())
}
