//! Expected pairwise connectivity (EPC) of a stochastic graph after deleting a
//! node set: exact scenario enumeration, the (ε,δ) component sampling
//! estimator, and a naive Monte Carlo estimator used for cross-checks.
//!
//! Internally everything works on a deletion mask over the original graph so
//! that heuristics can evaluate many candidate sets without materializing
//! subgraphs. The public entry points take a [`NodeSet`].

use std::f64::consts::E;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{pairs, DisjointSets, NodeSet, StochasticGraph};
use crate::rng::{bounded, coin_threshold, counter, trial_key};

/// Largest induced edge count [`exact_epc`] will enumerate by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Upper clamp on the number of sampling trials.
pub const DEFAULT_MAX_SAMPLES: u64 = 10_000_000;

/// Below this many trials the sampler stays on the calling thread.
const PARALLEL_THRESHOLD: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    Csp,
    NaiveMc,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Csp => "csp",
            Method::NaiveMc => "naive-mc",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpcEstimate {
    pub value: f64,
    /// Relative accuracy target; zero for exact values, absent when the
    /// sample count was fixed by the caller.
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub samples: u64,
    pub seed: Option<u64>,
    pub method: Method,
}

impl EpcEstimate {
    fn exact(value: f64) -> Self {
        Self {
            value,
            epsilon: Some(0.0),
            delta: Some(0.0),
            samples: 0,
            seed: None,
            method: Method::Exact,
        }
    }
}

fn mask_for(g: &StochasticGraph, s: &NodeSet) -> Result<Vec<bool>> {
    s.validate_for(g.n())?;
    Ok(s.to_mask(g.n()))
}

fn check_accuracy(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} not in (0,1)")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta {delta} not in (0,1)")));
    }
    Ok(())
}

/// Exact EPC of `g` with `s` deleted, by enumerating every live-edge scenario
/// of the induced subgraph. Refuses when that subgraph has more than
/// [`DEFAULT_ENUMERATION_CAP`] edges.
pub fn exact_epc(g: &StochasticGraph, s: &NodeSet) -> Result<EpcEstimate> {
    exact_epc_with_cap(g, s, DEFAULT_ENUMERATION_CAP)
}

pub fn exact_epc_with_cap(g: &StochasticGraph, s: &NodeSet, cap: usize) -> Result<EpcEstimate> {
    let deleted = mask_for(g, s)?;
    exact_on_mask(g, &deleted, cap).map(EpcEstimate::exact)
}

/// Sum of surviving edge probabilities. Each edge's endpoints are connected at
/// least whenever the edge is live, so this never exceeds the EPC.
pub fn epc_lower_bound(g: &StochasticGraph, s: &NodeSet) -> Result<f64> {
    let deleted = mask_for(g, s)?;
    Ok(lower_bound_on_mask(g, &deleted))
}

/// Number of sampling trials `⌈4(e−2)·ln(1/δ) / (ε²·lb)⌉`, clamped to
/// [`DEFAULT_MAX_SAMPLES`].
pub fn sample_count(epsilon: f64, delta: f64, lower_bound: f64) -> Result<u64> {
    sample_count_capped(epsilon, delta, lower_bound, DEFAULT_MAX_SAMPLES)
}

pub fn sample_count_capped(epsilon: f64, delta: f64, lower_bound: f64, max: u64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} not in (0,1]")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta {delta} not in (0,1)")));
    }
    if !(lower_bound > 0.0) {
        return Err(Error::Contract(format!(
            "sample count needs a positive lower bound, got {lower_bound}"
        )));
    }
    let raw = 4.0 * (E - 2.0) * (1.0 / delta).ln() / (epsilon * epsilon * lower_bound);
    let n = raw.ceil();
    if n >= max as f64 {
        if n > max as f64 {
            log::warn!("sample count {n} clamped to {max}");
        }
        return Ok(max);
    }
    Ok((n as u64).max(1))
}

/// Component sampling estimate with an (ε,δ) accuracy target.
///
/// The trial count is [`sample_count`] applied to `P_E / C(n',2)`, a lower
/// bound on the mean of the per-trial value `(S−1)/(n'−1)` that lies in
/// `[0,1]`. When the total edge mass is below `(ε/2)·n'^{-2}` the mass itself is
/// returned without sampling. Trial `t` draws from a stream keyed by
/// `(seed, t)`, so the value does not depend on how trials are scheduled.
pub fn csp_estimate(
    g: &StochasticGraph,
    s: &NodeSet,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<EpcEstimate> {
    check_accuracy(epsilon, delta)?;
    let deleted = mask_for(g, s)?;
    let (value, samples) = csp_on_mask(g, &deleted, epsilon, delta, seed)?;
    Ok(EpcEstimate {
        value,
        epsilon: Some(epsilon),
        delta: Some(delta),
        samples,
        seed: Some(seed),
        method: Method::Csp,
    })
}

/// Component sampling with a caller-chosen number of trials (local search
/// and final-estimate budgets).
pub fn csp_estimate_fixed(
    g: &StochasticGraph,
    s: &NodeSet,
    samples: u64,
    seed: u64,
) -> Result<EpcEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("sample budget must be positive".into()));
    }
    let deleted = mask_for(g, s)?;
    Ok(EpcEstimate {
        value: csp_fixed_on_mask(g, &deleted, samples, seed),
        epsilon: None,
        delta: None,
        samples,
        seed: Some(seed),
        method: Method::Csp,
    })
}

/// Average pairwise connectivity over `num_samples` full live-edge draws.
pub fn naive_mc_estimate(
    g: &StochasticGraph,
    s: &NodeSet,
    num_samples: u64,
    seed: u64,
) -> Result<EpcEstimate> {
    if num_samples == 0 {
        return Err(Error::InvalidParameter("num_samples must be positive".into()));
    }
    let deleted = mask_for(g, s)?;
    Ok(EpcEstimate {
        value: naive_on_mask(g, &deleted, num_samples, seed),
        epsilon: None,
        delta: None,
        samples: num_samples,
        seed: Some(seed),
        method: Method::NaiveMc,
    })
}

/// Scoring protocol for reported results: a residual graph with no uncertain
/// edge is counted exactly, anything else gets `samples` sampling trials.
pub fn final_estimate(
    g: &StochasticGraph,
    s: &NodeSet,
    samples: u64,
    seed: u64,
) -> Result<EpcEstimate> {
    let deleted = mask_for(g, s)?;
    if residual_is_deterministic(g, &deleted) {
        return Ok(EpcEstimate::exact(g.deterministic_connectivity(&deleted) as f64));
    }
    csp_estimate_fixed(g, s, samples, seed)
}

pub(crate) fn residual_is_deterministic(g: &StochasticGraph, deleted: &[bool]) -> bool {
    g.edges()
        .iter()
        .zip(g.probs())
        .all(|(&(u, v), &p)| deleted[u] || deleted[v] || p >= 1.0)
}

pub(crate) fn lower_bound_on_mask(g: &StochasticGraph, deleted: &[bool]) -> f64 {
    g.edges()
        .iter()
        .zip(g.probs())
        .filter(|(&(u, v), _)| !deleted[u] && !deleted[v])
        .map(|(_, &p)| p)
        .sum()
}

fn live_nodes(deleted: &[bool]) -> Vec<usize> {
    (0..deleted.len()).filter(|&v| !deleted[v]).collect()
}

/// Returns `(value, samples used)`.
pub(crate) fn csp_on_mask(
    g: &StochasticGraph,
    deleted: &[bool],
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<(f64, u64)> {
    let n_live = deleted.iter().filter(|&&d| !d).count();
    if n_live <= 1 {
        return Ok((0.0, 0));
    }
    let mass = lower_bound_on_mask(g, deleted);
    let nf = n_live as f64;
    if mass < epsilon / 2.0 / (nf * nf) {
        return Ok((mass, 0));
    }
    // each trial contributes S−1 ≤ n'−1, so the mean of the normalized trial
    // value is σ / C(n',2) and the edge mass bounds it from below after the
    // same scaling
    let samples = sample_count(epsilon, delta, mass / max_pairs(n_live))?;
    Ok((csp_fixed_on_mask(g, deleted, samples, seed), samples))
}

pub(crate) fn csp_fixed_on_mask(
    g: &StochasticGraph,
    deleted: &[bool],
    samples: u64,
    seed: u64,
) -> f64 {
    let live = live_nodes(deleted);
    if live.len() <= 1 || samples == 0 {
        return 0.0;
    }
    let trial = Trial {
        g,
        deleted,
        live: &live,
        thresholds: &thresholds(g),
        seed,
    };
    let total: u64 = if samples < PARALLEL_THRESHOLD {
        let mut scratch = BfsScratch::new(g.n());
        (0..samples).map(|t| scratch.reached(&trial, t)).sum()
    } else {
        (0..samples as usize)
            .into_par_iter()
            .with_min_len(1024)
            .map_init(|| BfsScratch::new(g.n()), |scratch, t| scratch.reached(&trial, t as u64))
            .sum()
    };
    live.len() as f64 * total as f64 / (2.0 * samples as f64)
}

fn thresholds(g: &StochasticGraph) -> Vec<u64> {
    g.probs().iter().map(|&p| coin_threshold(p)).collect()
}

/// Edge `e` of trial `t` survives iff `counter(trial_key(seed, t), e + 1)` is at
/// most its threshold; draw 0 picks the start node. A trial is therefore one
/// fixed live-edge sample no matter which edges the BFS happens to inspect.
struct Trial<'a> {
    g: &'a StochasticGraph,
    deleted: &'a [bool],
    live: &'a [usize],
    thresholds: &'a [u64],
    seed: u64,
}

/// Per-thread BFS buffers. `visited` holds the epoch of the last trial that
/// reached a node, which avoids clearing between trials.
struct BfsScratch {
    visited: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        Self {
            visited: vec![0; n],
            epoch: 0,
            queue: Vec::new(),
        }
    }

    /// One sampling trial: number of nodes other than the start reached by a
    /// BFS that keeps each explored edge with its survival probability.
    fn reached(&mut self, trial: &Trial, t: u64) -> u64 {
        if self.epoch == u32::MAX {
            self.visited.iter_mut().for_each(|x| *x = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        let epoch = self.epoch;
        let key = trial_key(trial.seed, t);
        let start = trial.live[bounded(counter(key, 0), trial.live.len())];
        self.queue.clear();
        self.queue.push(start);
        self.visited[start] = epoch;
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &(w, e) in trial.g.neighbors(v) {
                if trial.deleted[w] || self.visited[w] == epoch {
                    continue;
                }
                if counter(key, e as u64 + 1) <= trial.thresholds[e] {
                    self.visited[w] = epoch;
                    self.queue.push(w);
                }
            }
        }
        (self.queue.len() - 1) as u64
    }
}

pub(crate) fn naive_on_mask(
    g: &StochasticGraph,
    deleted: &[bool],
    samples: u64,
    seed: u64,
) -> f64 {
    let edges: Vec<(usize, usize, u64, u64)> = g
        .edges()
        .iter()
        .zip(thresholds(g))
        .enumerate()
        .filter(|(_, (&(u, v), _))| !deleted[u] && !deleted[v])
        .map(|(e, (&(u, v), thr))| (u, v, thr, e as u64))
        .collect();
    let one = |t: u64| -> u64 {
        let key = trial_key(seed, t);
        let mut sets = DisjointSets::new(g.n());
        for &(u, v, thr, e) in &edges {
            if counter(key, e + 1) <= thr {
                sets.union(u, v);
            }
        }
        sets.connected_pairs()
    };
    let total: u64 = if samples < PARALLEL_THRESHOLD {
        (0..samples).map(one).sum()
    } else {
        (0..samples as usize)
            .into_par_iter()
            .with_min_len(256)
            .map(|t| one(t as u64))
            .sum()
    };
    total as f64 / samples as f64
}

pub(crate) fn exact_on_mask(g: &StochasticGraph, deleted: &[bool], cap: usize) -> Result<f64> {
    let mut new_id = vec![usize::MAX; g.n()];
    let mut n_live = 0;
    for v in 0..g.n() {
        if !deleted[v] {
            new_id[v] = n_live;
            n_live += 1;
        }
    }
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .iter()
        .zip(g.probs())
        .filter(|(&(u, v), _)| !deleted[u] && !deleted[v])
        .map(|(&(u, v), &p)| (new_id[u], new_id[v], p))
        .collect();
    if edges.len() > cap {
        return Err(Error::EnumerationCap {
            edges: edges.len(),
            cap,
        });
    }
    let mut walk = Enumeration {
        edges: &edges,
        sets: RollbackSets::new(n_live),
        acc: Neumaier::default(),
    };
    walk.visit(0, 1.0, 0);
    Ok(walk.acc.total())
}

/// Depth-first walk over live/blocked choices for each edge. An edge whose
/// endpoints are already joined cannot change any component, so both of its
/// branches collapse into one with unchanged probability.
struct Enumeration<'a> {
    edges: &'a [(usize, usize, f64)],
    sets: RollbackSets,
    acc: Neumaier,
}

impl Enumeration<'_> {
    fn visit(&mut self, idx: usize, prob: f64, connected: u64) {
        if idx == self.edges.len() {
            self.acc.add(prob * connected as f64);
            return;
        }
        let (u, v, p) = self.edges[idx];
        let (ru, rv) = (self.sets.find(u), self.sets.find(v));
        if ru == rv {
            self.visit(idx + 1, prob, connected);
            return;
        }
        let joined = self.sets.size[ru] as u64 * self.sets.size[rv] as u64;
        self.sets.link(ru, rv);
        self.visit(idx + 1, prob * p, connected + joined);
        self.sets.undo();
        if p < 1.0 {
            self.visit(idx + 1, prob * (1.0 - p), connected);
        }
    }
}

/// Union by size without path compression, so unions can be undone.
struct RollbackSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn link(&mut self, a: usize, b: usize) {
        let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.history.push((big, small));
    }

    fn undo(&mut self) {
        let (big, small) = self.history.pop().expect("undo without link");
        self.parent[small] = small;
        self.size[big] -= self.size[small];
    }
}

/// Compensated summation.
#[derive(Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Upper bound on EPC for a residual with `n_live` nodes.
pub fn max_pairs(n_live: usize) -> f64 {
    pairs(n_live) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize, f64)]) -> StochasticGraph {
        StochasticGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn set(ids: &[usize]) -> NodeSet {
        NodeSet::new(ids.to_vec()).unwrap()
    }

    #[test]
    fn exact_small_values() {
        let edge = g(2, &[(0, 1, 0.5)]);
        assert_eq!(exact_epc(&edge, &NodeSet::empty()).unwrap().value, 0.5);

        let path = g(3, &[(0, 1, 0.5), (1, 2, 0.5)]);
        assert!((exact_epc(&path, &NodeSet::empty()).unwrap().value - 1.25).abs() < 1e-12);

        let tri = g(3, &[(0, 1, 0.5), (0, 2, 0.5), (1, 2, 0.5)]);
        assert!((exact_epc(&tri, &NodeSet::empty()).unwrap().value - 1.875).abs() < 1e-12);
        assert_eq!(exact_epc(&tri, &set(&[0, 1, 2])).unwrap().value, 0.0);
    }

    #[test]
    fn exact_refuses_above_cap() {
        let edges: Vec<_> = (0..30).map(|i| (i, i + 1, 0.5)).collect();
        let long = g(31, &edges);
        assert!(matches!(
            exact_epc(&long, &NodeSet::empty()),
            Err(Error::EnumerationCap { edges: 30, cap: 24 })
        ));
        // deleting enough of the path brings it under the cap
        assert!(exact_epc(&long, &set(&[5, 10, 15, 20, 25, 30])).is_ok());
    }

    #[test]
    fn lower_bound_examples() {
        let edge = g(2, &[(0, 1, 0.3)]);
        assert_eq!(epc_lower_bound(&edge, &NodeSet::empty()).unwrap(), 0.3);
        let path = g(3, &[(0, 1, 0.5), (1, 2, 0.5)]);
        assert_eq!(epc_lower_bound(&path, &NodeSet::empty()).unwrap(), 1.0);
        assert_eq!(epc_lower_bound(&g(4, &[]), &NodeSet::empty()).unwrap(), 0.0);
    }

    #[test]
    fn sample_count_examples() {
        assert_eq!(sample_count(0.1, 0.05, 1.0).unwrap(), 861);
        assert_eq!(sample_count(1.0, (-1.0f64).exp(), 4.0 * (E - 2.0)).unwrap(), 1);
        let a = sample_count(0.1, 0.05, 3.0).unwrap();
        let b = sample_count(0.1, 0.05, 6.0).unwrap();
        assert!(b * 2 >= a && b * 2 <= a + 2);
        assert!(sample_count(0.1, 0.05, 0.0).is_err());
        assert!(sample_count(0.0, 0.05, 1.0).is_err());
        assert_eq!(sample_count(0.1, 0.05, 1e-9).unwrap(), DEFAULT_MAX_SAMPLES);
    }

    #[test]
    fn csp_deterministic_edge_is_exact() {
        let edge = g(2, &[(0, 1, 1.0)]);
        for seed in 0..5 {
            let est = csp_estimate(&edge, &NodeSet::empty(), 0.1, 0.05, seed).unwrap();
            assert_eq!(est.value, 1.0);
            assert!(est.samples >= 1);
        }
    }

    #[test]
    fn csp_early_exit_returns_mass() {
        // 10 nodes, one faint edge: mass 1e-4 < (0.1/2)/100 = 5e-4
        let faint = g(10, &[(0, 1, 1e-4)]);
        let est = csp_estimate(&faint, &NodeSet::empty(), 0.1, 0.05, 1).unwrap();
        assert_eq!(est.samples, 0);
        assert_eq!(est.value, 1e-4);
    }

    #[test]
    fn csp_tiny_residuals_are_zero() {
        let edge = g(2, &[(0, 1, 0.9)]);
        let est = csp_estimate(&edge, &set(&[0]), 0.1, 0.05, 3).unwrap();
        assert_eq!((est.value, est.samples), (0.0, 0));
    }

    #[test]
    fn csp_is_schedule_independent() {
        let edges: Vec<_> = (0..40).map(|i| (i, (i * 7 + 3) % 41, 0.4)).filter(|e| e.0 != e.1).collect();
        let mut uniq = std::collections::BTreeMap::new();
        for (u, v, p) in edges {
            uniq.insert((u.min(v), u.max(v)), p);
        }
        let graph = g(41, &uniq.into_iter().map(|((u, v), p)| (u, v, p)).collect::<Vec<_>>());
        let deleted = vec![false; 41];
        // the parallel path kicks in at PARALLEL_THRESHOLD; compare to a serial sum
        let samples = PARALLEL_THRESHOLD + 17;
        let par = csp_fixed_on_mask(&graph, &deleted, samples, 9);
        let live: Vec<usize> = (0..41).collect();
        let trial = Trial { g: &graph, deleted: &deleted, live: &live, thresholds: &thresholds(&graph), seed: 9 };
        let mut scratch = BfsScratch::new(41);
        let serial: u64 = (0..samples).map(|t| scratch.reached(&trial, t)).sum();
        assert_eq!(par, 41.0 * serial as f64 / (2.0 * samples as f64));
    }

    #[test]
    fn bfs_and_union_find_see_the_same_trial() {
        // both samplers key edge coins by (trial, edge), so per trial the BFS
        // reaches exactly the start node's component in the union-find graph
        let graph = g(6, &[(0, 1, 0.5), (1, 2, 0.5), (2, 0, 0.5), (3, 4, 0.5), (4, 5, 0.5), (2, 3, 0.3)]);
        let deleted = vec![false; 6];
        let live: Vec<usize> = (0..6).collect();
        let thr = thresholds(&graph);
        let trial = Trial { g: &graph, deleted: &deleted, live: &live, thresholds: &thr, seed: 4 };
        let mut scratch = BfsScratch::new(6);
        for t in 0..500 {
            let key = trial_key(4, t);
            let mut sets = DisjointSets::new(6);
            for (e, &(u, v)) in graph.edges().iter().enumerate() {
                if counter(key, e as u64 + 1) <= thr[e] {
                    sets.union(u, v);
                }
            }
            let start = bounded(counter(key, 0), 6);
            let size = (0..6).filter(|&w| sets.find(w) == sets.find(start)).count();
            assert_eq!(scratch.reached(&trial, t), size as u64 - 1);
        }
    }

    #[test]
    fn naive_mc_examples() {
        let edge = g(2, &[(0, 1, 1.0)]);
        assert_eq!(naive_mc_estimate(&edge, &NodeSet::empty(), 10, 0).unwrap().value, 1.0);
        let tri = g(3, &[(0, 1, 0.5), (0, 2, 0.5), (1, 2, 0.5)]);
        assert_eq!(naive_mc_estimate(&tri, &set(&[0, 1, 2]), 10, 0).unwrap().value, 0.0);
        let est = naive_mc_estimate(&tri, &NodeSet::empty(), 100_000, 11).unwrap();
        assert!((est.value - 1.875).abs() < 0.02, "{}", est.value);
    }

    #[test]
    fn final_estimate_counts_deterministic_residuals() {
        let graph = g(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 0.5)]);
        let est = final_estimate(&graph, &set(&[3]), 1000, 0).unwrap();
        assert_eq!(est.method, Method::Exact);
        assert_eq!(est.value, 3.0);
        let est = final_estimate(&graph, &NodeSet::empty(), 1000, 0).unwrap();
        assert_eq!((est.method, est.samples), (Method::Csp, 1000));
    }

    #[test]
    fn neumaier_beats_naive_sum() {
        let mut acc = Neumaier::default();
        for x in [1e16, 1.0, -1e16] {
            acc.add(x);
        }
        assert_eq!(acc.total(), 1.0);
    }
}
