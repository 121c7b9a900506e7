//! Ranking baselines: probability-weighted degree, PageRank on the expected
//! graph, and shortest-path betweenness on the topology.

use std::collections::VecDeque;

use super::greedy::check_budget;
use crate::error::Result;
use crate::graph::{NodeSet, StochasticGraph};

pub const PAGERANK_DAMPING: f64 = 0.85;
const PAGERANK_TOL: f64 = 1e-10;
const PAGERANK_MAX_ITER: usize = 200;

/// The `k` highest scores; ties go to the smaller id.
pub fn top_k(scores: &[f64], k: usize) -> NodeSet {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order.truncate(k);
    NodeSet::new(order).expect("indices are distinct")
}

/// Sum of incident edge probabilities per node.
pub fn weighted_degrees(g: &StochasticGraph) -> Vec<f64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&(_, e)| g.probs()[e]).sum())
        .collect()
}

pub fn degree_select(g: &StochasticGraph, k: usize) -> Result<NodeSet> {
    check_budget(g, k)?;
    Ok(top_k(&weighted_degrees(g), k))
}

/// Power iteration with transitions proportional to edge probability. Mass
/// on isolated nodes is spread uniformly.
pub fn pagerank_scores(g: &StochasticGraph, damping: f64) -> Vec<f64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let strength = weighted_degrees(g);
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..PAGERANK_MAX_ITER {
        let dangling: f64 = (0..n).filter(|&v| strength[v] == 0.0).map(|v| rank[v]).sum();
        let teleport = (1.0 - damping) / nf + damping * dangling / nf;
        for v in 0..n {
            let inflow: f64 = g
                .neighbors(v)
                .iter()
                .map(|&(w, e)| g.probs()[e] * rank[w] / strength[w])
                .sum();
            next[v] = teleport + damping * inflow;
        }
        let diff: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if diff < PAGERANK_TOL {
            break;
        }
    }
    rank
}

pub fn pagerank_select(g: &StochasticGraph, k: usize, damping: f64) -> Result<NodeSet> {
    check_budget(g, k)?;
    Ok(top_k(&pagerank_scores(g, damping), k))
}

/// Brandes accumulation over unweighted shortest paths. Each unordered pair
/// is counted once.
pub fn betweenness_scores(g: &StochasticGraph) -> Vec<f64> {
    let n = g.n();
    let mut centrality = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in 0..n {
        for v in 0..n {
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
            preds[v].clear();
        }
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    centrality.iter_mut().for_each(|c| *c /= 2.0);
    centrality
}

pub fn betweenness_select(g: &StochasticGraph, k: usize) -> Result<NodeSet> {
    check_budget(g, k)?;
    Ok(top_k(&betweenness_scores(g), k))
}
