//! Seeded random instances: Erdős–Rényi, Barabási–Albert and Watts–Strogatz
//! topologies with edge survival probabilities drawn from a [`ProbabilitySpec`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::StochasticGraph;
use crate::rng::{derive_str, rng_for};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ProbabilitySpec {
    Constant(f64),
    /// Uniform on (0, 1].
    Uniform01,
    Beta { alpha: f64, beta: f64 },
    /// Normal truncated to (0, 1] by rejection.
    TruncNormal { mean: f64, sd: f64 },
}

impl ProbabilitySpec {
    pub const BETA_2_5: Self = Self::Beta {
        alpha: 2.0,
        beta: 5.0,
    };
    pub const NORMAL_05_02: Self = Self::TruncNormal {
        mean: 0.5,
        sd: 0.2,
    };

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Constant(p) => p > 0.0 && p <= 1.0,
            Self::Uniform01 => true,
            Self::Beta { alpha, beta } => alpha > 0.0 && beta > 0.0,
            // the acceptance region must carry some mass
            Self::TruncNormal { mean, sd } => sd > 0.0 && mean.is_finite() && sd.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("bad probability spec {self}")))
        }
    }

    /// Draws `count` values in (0, 1].
    pub fn sample(&self, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        self.validate()?;
        let in_range = |x: f64| x > 0.0 && x <= 1.0;
        let out = match *self {
            Self::Constant(p) => vec![p; count],
            Self::Uniform01 => (0..count).map(|_| 1.0 - rng.random::<f64>()).collect(),
            Self::Beta { alpha, beta } => {
                let dist = Beta::new(alpha, beta)
                    .map_err(|e| Error::InvalidParameter(e.to_string()))?;
                (0..count)
                    .map(|_| loop {
                        let x = dist.sample(rng);
                        if in_range(x) {
                            break x;
                        }
                    })
                    .collect()
            }
            Self::TruncNormal { mean, sd } => {
                let dist =
                    Normal::new(mean, sd).map_err(|e| Error::InvalidParameter(e.to_string()))?;
                (0..count)
                    .map(|_| loop {
                        let x = dist.sample(rng);
                        if in_range(x) {
                            break x;
                        }
                    })
                    .collect()
            }
        };
        Ok(out)
    }
}

impl fmt::Display for ProbabilitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Constant(p) => write!(f, "const:{p}"),
            Self::Uniform01 => f.write_str("uniform"),
            Self::Beta { alpha, beta } => write!(f, "beta:{alpha}:{beta}"),
            Self::TruncNormal { mean, sd } => write!(f, "normal:{mean}:{sd}"),
        }
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::InvalidParameter(format!("bad {what} `{s}`")))
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidParameter(format!("bad {what} `{s}`")))
}

impl FromStr for ProbabilitySpec {
    type Err = Error;

    /// `const:P`, `uniform`, `beta[:A:B]`, `normal[:MEAN:SD]`. A bare number
    /// is read as a constant.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["const" | "constant", p] => Self::Constant(parse_f64(p, "probability")?),
            ["uniform"] => Self::Uniform01,
            ["beta"] => Self::BETA_2_5,
            ["beta", a, b] => Self::Beta {
                alpha: parse_f64(a, "alpha")?,
                beta: parse_f64(b, "beta")?,
            },
            ["normal"] => Self::NORMAL_05_02,
            ["normal", m, sd] => Self::TruncNormal {
                mean: parse_f64(m, "mean")?,
                sd: parse_f64(sd, "sd")?,
            },
            [p] if p.parse::<f64>().is_ok() => Self::Constant(parse_f64(p, "probability")?),
            _ => return Err(Error::InvalidParameter(format!("unknown probability spec `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl TryFrom<String> for ProbabilitySpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProbabilitySpec> for String {
    fn from(p: ProbabilitySpec) -> String {
        p.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TopologySpec {
    /// `m` distinct pairs chosen uniformly.
    Er { n: usize, m: usize },
    /// Preferential attachment with about `m_total` edges.
    Ba { n: usize, m_total: usize },
    /// Ring lattice of even degree with random rewiring.
    Ws {
        n: usize,
        ring_degree: usize,
        rewire_p: f64,
    },
}

impl TopologySpec {
    pub fn n(&self) -> usize {
        match *self {
            Self::Er { n, .. } | Self::Ba { n, .. } | Self::Ws { n, .. } => n,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Er { .. } => "er",
            Self::Ba { .. } => "ba",
            Self::Ws { .. } => "ws",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            Self::Er { n, m } => {
                let max = n * n.saturating_sub(1) / 2;
                if m > max {
                    return bad(format!("er: m = {m} exceeds n(n-1)/2 = {max}"));
                }
            }
            Self::Ba { n, m_total } => {
                if n < 2 {
                    return bad(format!("ba: need at least 2 nodes, got {n}"));
                }
                let a = ba_attachment(n, m_total);
                if a >= n {
                    return bad(format!("ba: attachment {a} must be below n = {n}"));
                }
            }
            Self::Ws {
                n,
                ring_degree,
                rewire_p,
            } => {
                if ring_degree % 2 != 0 || ring_degree == 0 || ring_degree >= n {
                    return bad(format!(
                        "ws: ring degree {ring_degree} must be even, positive and below n = {n}"
                    ));
                }
                if !(0.0..=1.0).contains(&rewire_p) {
                    return bad(format!("ws: rewiring probability {rewire_p} not in [0,1]"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Er { n, m } => write!(f, "er:{n}:{m}"),
            Self::Ba { n, m_total } => write!(f, "ba:{n}:{m_total}"),
            Self::Ws {
                n,
                ring_degree,
                rewire_p,
            } => write!(f, "ws:{n}:{ring_degree}:{rewire_p}"),
        }
    }
}

impl FromStr for TopologySpec {
    type Err = Error;

    /// `er:N:M`, `ba:N:M_TOTAL`, `ws:N:DEGREE:REWIRE_P`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["er", n, m] => Self::Er {
                n: parse_usize(n, "node count")?,
                m: parse_usize(m, "edge count")?,
            },
            ["ba", n, m] => Self::Ba {
                n: parse_usize(n, "node count")?,
                m_total: parse_usize(m, "edge count")?,
            },
            ["ws", n, d, p] => Self::Ws {
                n: parse_usize(n, "node count")?,
                ring_degree: parse_usize(d, "ring degree")?,
                rewire_p: parse_f64(p, "rewiring probability")?,
            },
            _ => return Err(Error::InvalidParameter(format!("unknown topology spec `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl TryFrom<String> for TopologySpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TopologySpec> for String {
    fn from(t: TopologySpec) -> String {
        t.to_string()
    }
}

/// Edges added per arriving node so that the total is close to `m_total`.
pub fn ba_attachment(n: usize, m_total: usize) -> usize {
    ((m_total as f64 / n as f64).round() as usize).max(1)
}

/// Builds a graph from `topology`, then draws edge probabilities from
/// `probs`. Both stages derive their randomness from `seed`.
pub fn generate(topology: &TopologySpec, probs: &ProbabilitySpec, seed: u64) -> Result<StochasticGraph> {
    topology.validate()?;
    probs.validate()?;
    let mut rng = rng_for(derive_str(seed, "topology"));
    let pairs = match *topology {
        TopologySpec::Er { n, m } => erdos_renyi(n, m, &mut rng),
        TopologySpec::Ba { n, m_total } => barabasi_albert(n, ba_attachment(n, m_total), &mut rng),
        TopologySpec::Ws {
            n,
            ring_degree,
            rewire_p,
        } => watts_strogatz(n, ring_degree, rewire_p, &mut rng),
    };
    let skeleton = StochasticGraph::new(topology.n(), pairs.into_iter().map(|(u, v)| (u, v, 1.0)))?;
    assign_probabilities(&skeleton, probs, seed)
}

/// Redraws every edge probability of `g` from `probs`, in canonical edge order.
pub fn assign_probabilities(g: &StochasticGraph, probs: &ProbabilitySpec, seed: u64) -> Result<StochasticGraph> {
    let mut rng = rng_for(derive_str(seed, "probabilities"));
    g.with_probabilities(probs.sample(g.m(), &mut rng)?)
}

fn pair_from_index(n: usize, mut idx: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - u - 1;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}

fn erdos_renyi(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let total = n * n.saturating_sub(1) / 2;
    let mut chosen: Vec<usize> = index::sample(rng, total, m).into_vec();
    chosen.sort_unstable();
    chosen.into_iter().map(|i| pair_from_index(n, i)).collect()
}

/// Starts from a clique on the first `attach` nodes (a single node when
/// `attach == 1`); every later node links to `attach` distinct earlier nodes
/// chosen with probability proportional to degree.
fn barabasi_albert(n: usize, attach: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    // each node appears once per incident edge
    let mut endpoints: Vec<usize> = Vec::new();
    for u in 0..attach {
        for v in u + 1..attach {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    for v in attach..n {
        let mut targets = BTreeSet::new();
        while targets.len() < attach.min(v) {
            let t = if endpoints.is_empty() {
                rng.random_range(0..v)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            targets.insert(t);
        }
        for t in targets {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    edges
}

/// Ring lattice where each node links to its `degree/2` nearest successors;
/// each lattice edge `(u, u+j)` is rewired to `(u, w)` with probability
/// `rewire_p`, `w` drawn uniformly among nodes not already adjacent to `u`.
fn watts_strogatz(n: usize, degree: usize, rewire_p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=degree / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for j in 1..=degree / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.random::<f64>() >= rewire_p {
                continue;
            }
            if adj[u].len() >= n - 1 || !adj[u].contains(&v) {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let mut edges = Vec::new();
    for (u, nbrs) in adj.iter().enumerate() {
        edges.extend(nbrs.range(u + 1..).map(|&v| (u, v)));
    }
    edges
}

/// The ER, BA and WS specs used for a benchmark size.
pub fn scale_presets(n: usize) -> Result<[TopologySpec; 3]> {
    if ![100, 200, 300, 500].contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "no preset for n = {n}; supported sizes are 100, 200, 300, 500"
        )));
    }
    Ok([
        TopologySpec::Er { n, m: 2 * n },
        TopologySpec::Ba { n, m_total: 2 * n },
        TopologySpec::Ws {
            n,
            ring_degree: 4,
            rewire_p: 0.3,
        },
    ])
}

/// Conventional file name for a generated instance.
pub fn instance_file_name(topology: &TopologySpec, seed: u64) -> String {
    format!("{}_n{}_s{}.sg", topology.kind(), topology.n(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components;

    #[test]
    fn er_exact_edge_count() {
        let g = generate(&TopologySpec::Er { n: 100, m: 200 }, &ProbabilitySpec::Constant(0.5), 7).unwrap();
        assert_eq!((g.n(), g.m()), (100, 200));
        assert!(g.probs().iter().all(|&p| p == 0.5));
        let full = generate(&TopologySpec::Er { n: 6, m: 15 }, &ProbabilitySpec::Uniform01, 1).unwrap();
        assert_eq!(full.m(), 15);
        assert!(TopologySpec::Er { n: 5, m: 11 }.validate().is_err());
    }

    #[test]
    fn pair_index_decoding_covers_all_pairs() {
        let n = 7;
        let pairs: Vec<_> = (0..21).map(|i| pair_from_index(n, i)).collect();
        let mut expected = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                expected.push((u, v));
            }
        }
        assert_eq!(pairs, expected);
    }

    #[test]
    fn ws_keeps_ring_edge_count() {
        for seed in 0..5 {
            let spec = TopologySpec::Ws { n: 100, ring_degree: 4, rewire_p: 0.3 };
            let g = generate(&spec, &ProbabilitySpec::Constant(1.0), seed).unwrap();
            assert_eq!((g.n(), g.m()), (100, 200));
        }
        let ring = generate(&TopologySpec::Ws { n: 10, ring_degree: 4, rewire_p: 0.0 }, &ProbabilitySpec::Uniform01, 0).unwrap();
        assert_eq!(components(&ring, &[false; 10]).len(), 1);
        assert!((0..10).all(|v| ring.degree(v) == 4));
    }

    #[test]
    fn ba_is_connected_with_expected_density() {
        let g = generate(&TopologySpec::Ba { n: 100, m_total: 200 }, &ProbabilitySpec::Uniform01, 3).unwrap();
        assert_eq!(ba_attachment(100, 200), 2);
        assert_eq!(g.m(), 1 + 98 * 2);
        assert_eq!(components(&g, &[false; 100]).len(), 1);
        let tree = generate(&TopologySpec::Ba { n: 30, m_total: 30 }, &ProbabilitySpec::Uniform01, 3).unwrap();
        assert_eq!(tree.m(), 29);
        assert_eq!(components(&tree, &[false; 30]).len(), 1);
    }

    #[test]
    fn same_seed_same_bytes() {
        for spec in scale_presets(100).unwrap() {
            let a = generate(&spec, &ProbabilitySpec::BETA_2_5, 11).unwrap().to_text(None);
            let b = generate(&spec, &ProbabilitySpec::BETA_2_5, 11).unwrap().to_text(None);
            let c = generate(&spec, &ProbabilitySpec::BETA_2_5, 12).unwrap().to_text(None);
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn distribution_means() {
        let n = 100_000;
        let check = |spec: ProbabilitySpec, mean: f64| {
            let xs = spec.sample(n, &mut rng_for(5)).unwrap();
            assert!(xs.iter().all(|&x| x > 0.0 && x <= 1.0));
            let m = xs.iter().sum::<f64>() / n as f64;
            let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
            let se = (var / n as f64).sqrt();
            assert!((m - mean).abs() < 3.0 * se, "{spec}: mean {m} vs {mean} (se {se})");
            m
        };
        check(ProbabilitySpec::Uniform01, 0.5);
        let beta_mean = check(ProbabilitySpec::BETA_2_5, 2.0 / 7.0);
        assert!((beta_mean - 2.0 / 7.0).abs() < 0.01);
        check(ProbabilitySpec::NORMAL_05_02, 0.5);
    }

    #[test]
    fn presets() {
        let [er, ba, ws] = scale_presets(200).unwrap();
        assert_eq!(er, TopologySpec::Er { n: 200, m: 400 });
        assert_eq!(ba, TopologySpec::Ba { n: 200, m_total: 400 });
        assert_eq!(ws, TopologySpec::Ws { n: 200, ring_degree: 4, rewire_p: 0.3 });
        assert_eq!(scale_presets(100).unwrap()[0], TopologySpec::Er { n: 100, m: 200 });
        assert!(scale_presets(137).is_err());
    }

    #[test]
    fn spec_strings_roundtrip() {
        for s in ["er:100:200", "ba:50:100", "ws:100:4:0.3"] {
            assert_eq!(s.parse::<TopologySpec>().unwrap().to_string(), s);
        }
        for s in ["const:0.5", "uniform", "beta:2:5", "normal:0.5:0.2"] {
            assert_eq!(s.parse::<ProbabilitySpec>().unwrap().to_string(), s);
        }
        assert_eq!("0.3".parse::<ProbabilitySpec>().unwrap(), ProbabilitySpec::Constant(0.3));
        assert!("const:0".parse::<ProbabilitySpec>().is_err());
        assert!("ws:10:3:0.3".parse::<TopologySpec>().is_err());
        assert!("grid:10".parse::<TopologySpec>().is_err());
        assert_eq!(instance_file_name(&"er:100:200".parse().unwrap(), 7), "er_n100_s7.sg");
    }
}
