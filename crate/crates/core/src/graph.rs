//! Stochastic graph representation and deterministic-subgraph operations.
//!
//! A [`StochasticGraph`] is an undirected simple graph on nodes `0..n` whose
//! edges survive independently with probability `π_e ∈ (0, 1]`. Edges are kept
//! in canonical order (`u < v`, lexicographic) so that a [`Scenario`] bitmask
//! has the same meaning everywhere, including across files and runs.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of unordered pairs among `size` nodes.
#[inline]
pub fn pairs(size: usize) -> u64 {
    let s = size as u64;
    s * s.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq)]
pub struct StochasticGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    probs: Vec<f64>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl StochasticGraph {
    /// Builds a graph from `(u, v, π)` triples. Endpoints may be given in
    /// either order; the edge list is canonicalized and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut list: Vec<(usize, usize, f64)> = Vec::new();
        for (u, v, p) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidNode { id: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has probability {p} outside (0,1]"
                )));
            }
            list.push((u.min(v), u.max(v), p));
        }
        list.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        for w in list.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({},{})",
                    w[0].0, w[0].1
                )));
            }
        }
        let edges: Vec<(usize, usize)> = list.iter().map(|&(u, v, _)| (u, v)).collect();
        let probs: Vec<f64> = list.iter().map(|&(_, _, p)| p).collect();
        Ok(Self::from_canonical(n, edges, probs))
    }

    /// Same topology, every edge probability set to `p`.
    pub fn with_uniform_probability(&self, p: f64) -> Result<Self> {
        self.with_probabilities(vec![p; self.m()])
    }

    /// Same topology with a new probability per edge (aligned with [`edges`](Self::edges)).
    pub fn with_probabilities(&self, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != self.m() {
            return Err(Error::Contract(format!(
                "{} probabilities for {} edges",
                probs.len(),
                self.m()
            )));
        }
        if let Some((e, p)) = probs.iter().enumerate().find(|(_, &p)| !(p > 0.0 && p <= 1.0)) {
            return Err(Error::InvalidGraph(format!(
                "edge {e} has probability {p} outside (0,1]"
            )));
        }
        Ok(Self::from_canonical(self.n, self.edges.clone(), probs))
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>, probs: Vec<f64>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
        Self {
            n,
            edges,
            probs,
            adjacency,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Index of edge `{u, v}` if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// True when every edge survives with certainty.
    pub fn is_deterministic(&self) -> bool {
        self.probs.iter().all(|&p| p >= 1.0)
    }

    /// Removes the nodes of `s` and relabels the survivors `0..n-|s|` by
    /// ascending original id. Surviving edges keep their probabilities and
    /// relative order.
    pub fn induced_deletion(&self, s: &NodeSet) -> Result<InducedSubgraph> {
        s.validate_for(self.n)?;
        let mut new_id = vec![usize::MAX; self.n];
        let mut original_ids = Vec::with_capacity(self.n - s.len());
        for v in 0..self.n {
            if !s.contains(v) {
                new_id[v] = original_ids.len();
                original_ids.push(v);
            }
        }
        let mut edges = Vec::new();
        let mut probs = Vec::new();
        for (&(u, v), &p) in self.edges.iter().zip(&self.probs) {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                edges.push((new_id[u], new_id[v]));
                probs.push(p);
            }
        }
        Ok(InducedSubgraph {
            graph: Self::from_canonical(original_ids.len(), edges, probs),
            original_ids,
        })
    }

    /// Pairwise connectivity `Σ_C |C|(|C|-1)/2` of the live-edge subgraph.
    pub fn pairwise_connectivity(&self, scenario: &Scenario) -> Result<u64> {
        self.check_scenario(scenario)?;
        let mut sets = DisjointSets::new(self.n);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if scenario.live[e] {
                sets.union(u, v);
            }
        }
        Ok(sets.connected_pairs())
    }

    /// Probability of a scenario: product of `π` over live edges and `1 - π`
    /// over blocked ones.
    pub fn scenario_probability(&self, scenario: &Scenario) -> Result<f64> {
        self.check_scenario(scenario)?;
        Ok(self
            .probs
            .iter()
            .zip(&scenario.live)
            .map(|(&p, &live)| if live { p } else { 1.0 - p })
            .product())
    }

    fn check_scenario(&self, scenario: &Scenario) -> Result<()> {
        if scenario.live.len() != self.m() {
            return Err(Error::Contract(format!(
                "scenario has {} entries, graph has {} edges",
                scenario.live.len(),
                self.m()
            )));
        }
        Ok(())
    }

    /// Connected pairs when every edge is live, restricted to nodes not marked
    /// in `deleted`.
    pub fn deterministic_connectivity(&self, deleted: &[bool]) -> u64 {
        let mut sets = DisjointSets::new(self.n);
        for &(u, v) in &self.edges {
            if !deleted[u] && !deleted[v] {
                sets.union(u, v);
            }
        }
        // deleted nodes stay singletons and contribute nothing
        sets.connected_pairs()
    }

    /// Parses the line-oriented text format: a header `n m`, then `m` lines
    /// `u v p`. Lines starting with `#` and blank lines are skipped.
    pub fn read_from<R: BufRead>(reader: R) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = text.split_whitespace().collect();
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(parse_err(format!("expected header `n m`, got `{text}`")));
                    }
                    let n = fields[0]
                        .parse()
                        .map_err(|_| parse_err(format!("bad node count `{}`", fields[0])))?;
                    let m = fields[1]
                        .parse()
                        .map_err(|_| parse_err(format!("bad edge count `{}`", fields[1])))?;
                    header = Some((n, m));
                }
                Some((n, _)) => {
                    if fields.len() != 3 {
                        return Err(parse_err(format!("expected `u v p`, got `{text}`")));
                    }
                    let u: usize = fields[0]
                        .parse()
                        .map_err(|_| parse_err(format!("bad node id `{}`", fields[0])))?;
                    let v: usize = fields[1]
                        .parse()
                        .map_err(|_| parse_err(format!("bad node id `{}`", fields[1])))?;
                    let p: f64 = fields[2]
                        .parse()
                        .map_err(|_| parse_err(format!("bad probability `{}`", fields[2])))?;
                    if u >= v || v >= n {
                        return Err(parse_err(format!("edge ({u},{v}) violates 0 <= u < v < {n}")));
                    }
                    if !(p > 0.0 && p <= 1.0) {
                        return Err(parse_err(format!("probability {p} outside (0,1]")));
                    }
                    edges.push((u, v, p));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Self::new(n, edges)
    }

    pub fn read_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(file))
    }

    /// Serializes in canonical edge order. Probabilities use the shortest
    /// decimal that round-trips.
    pub fn to_text(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        let _ = writeln!(out, "{} {}", self.n, self.m());
        for (&(u, v), p) in self.edges.iter().zip(&self.probs) {
            let _ = writeln!(out, "{u} {v} {p}");
        }
        out
    }

    pub fn write_to<W: Write>(&self, mut w: W, comment: Option<&str>) -> Result<()> {
        w.write_all(self.to_text(comment).as_bytes())?;
        Ok(())
    }
}

/// Result of [`StochasticGraph::induced_deletion`].
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: StochasticGraph,
    /// `original_ids[new_id]` is the id in the parent graph.
    pub original_ids: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_original(&self, s: &NodeSet) -> NodeSet {
        NodeSet(s.iter().map(|v| self.original_ids[v]).collect())
    }
}

/// Strictly increasing set of node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    /// Sorts the ids; repeated ids are an error.
    pub fn new(mut ids: Vec<usize>) -> Result<Self> {
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateNode(w[0]));
        }
        Ok(Self(ids))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Members of a boolean mask, in id order.
    pub fn from_mask(mask: &[bool]) -> Self {
        Self(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &b)| b.then_some(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn validate_for(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&id) if id >= n => Err(Error::InvalidNode { id, n }),
            _ => Ok(()),
        }
    }

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut ids: Vec<usize> = self.iter().chain(other.iter()).collect();
        ids.sort_unstable();
        ids.dedup();
        NodeSet(ids)
    }

    /// All nodes of `0..n` not in the set.
    pub fn complement(&self, n: usize) -> NodeSet {
        NodeSet((0..n).filter(|&v| !self.contains(v)).collect())
    }
}

impl From<NodeSet> for Vec<usize> {
    fn from(s: NodeSet) -> Self {
        s.0
    }
}

/// One live-edge realization: `live[e]` tells whether edge `e` survived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub live: Vec<bool>,
}

impl Scenario {
    pub fn new(live: Vec<bool>) -> Self {
        Self { live }
    }

    /// Bit `e` of `bits` is the state of edge `e`. Requires `m <= 64`.
    pub fn from_bits(m: usize, bits: u64) -> Self {
        assert!(m <= 64);
        Self {
            live: (0..m).map(|e| bits >> e & 1 == 1).collect(),
        }
    }

    pub fn all_live(m: usize) -> Self {
        Self {
            live: vec![true; m],
        }
    }
}

/// Union-find with union by size. Path halving on `find`.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub(crate) fn connected_pairs(&mut self) -> u64 {
        (0..self.parent.len())
            .filter(|&v| self.parent[v] == v)
            .map(|r| pairs(self.size[r]))
            .sum()
    }
}

/// Connected components of the topology (all edges treated as live),
/// ignoring nodes marked in `deleted`. Each component is sorted, and the list
/// is ordered by smallest member.
pub fn components(g: &StochasticGraph, deleted: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = deleted.to_vec();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &(w, _) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}
