#![allow(dead_code)]

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use scndp_core::{NodeSet, Scenario, StochasticGraph};

/// A graph on `n` nodes with `m` distinct random edges and probabilities
/// drawn from `prob`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize, prob: impl Fn(&mut ChaCha8Rng) -> f64) -> StochasticGraph {
    let mut all = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v));
        }
    }
    let m = m.min(all.len());
    let picks = index::sample(rng, all.len(), m).into_vec();
    let edges: Vec<_> = picks.into_iter().map(|i| (all[i].0, all[i].1, prob(rng))).collect();
    StochasticGraph::new(n, edges).unwrap()
}

/// Probabilities mixing certain edges with values spread over (0.1, 1).
pub fn mixed_prob(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.2) {
        1.0
    } else {
        rng.random_range(0.1..1.0)
    }
}

/// Expected pairwise connectivity by summing over every live-edge scenario of
/// the residual graph.
pub fn scenario_sum(g: &StochasticGraph, s: &NodeSet) -> f64 {
    let sub = g.induced_deletion(s).unwrap().graph;
    let m = sub.m();
    assert!(m <= 20, "scenario oracle limited to 20 edges");
    (0..1u64 << m)
        .map(|bits| {
            let sc = Scenario::from_bits(m, bits);
            sub.scenario_probability(&sc).unwrap() * sub.pairwise_connectivity(&sc).unwrap() as f64
        })
        .sum()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<NodeSet> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<NodeSet>) {
        if cur.len() == k {
            out.push(NodeSet::new(cur.clone()).unwrap());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
