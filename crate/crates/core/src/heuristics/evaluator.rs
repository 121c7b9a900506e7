use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::epc::{
    csp_fixed_on_mask, csp_on_mask, exact_on_mask, residual_is_deterministic,
    DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::graph::{NodeSet, StochasticGraph};
use crate::rng::derive_str;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum EvalMode {
    Exact,
    /// Component sampling. `samples` overrides the (ε,δ) trial count.
    Csp {
        epsilon: f64,
        delta: f64,
        samples: Option<u64>,
    },
}

/// How the heuristics score a deletion set.
///
/// Every call takes an explicit sampling seed so callers can share one seed
/// across the alternatives they compare. A residual graph without uncertain
/// edges is always counted exactly, whatever the mode.
#[derive(Debug)]
pub struct Evaluator {
    mode: EvalMode,
    seed: u64,
    cap: usize,
    evaluations: AtomicU64,
}

impl Clone for Evaluator {
    fn clone(&self) -> Self {
        Self {
            mode: self.mode,
            seed: self.seed,
            cap: self.cap,
            evaluations: AtomicU64::new(self.evaluations()),
        }
    }
}

impl Evaluator {
    pub fn new(mode: EvalMode, seed: u64) -> Self {
        Self {
            mode,
            seed,
            cap: DEFAULT_ENUMERATION_CAP,
            evaluations: AtomicU64::new(0),
        }
    }

    pub fn exact() -> Self {
        Self::new(EvalMode::Exact, 0)
    }

    pub fn csp(epsilon: f64, delta: f64, seed: u64) -> Self {
        Self::new(
            EvalMode::Csp {
                epsilon,
                delta,
                samples: None,
            },
            seed,
        )
    }

    /// Sampling with a fixed number of trials per evaluation.
    pub fn csp_fixed(samples: u64, seed: u64) -> Self {
        Self::new(
            EvalMode::Csp {
                epsilon: 0.1,
                delta: 0.05,
                samples: Some(samples),
            },
            seed,
        )
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    /// Seed for a named phase of an algorithm.
    pub fn stream(&self, label: &str) -> u64 {
        derive_str(self.seed, label)
    }

    /// Rejects configurations that cannot be evaluated on `g`.
    pub fn check(&self, g: &StochasticGraph) -> Result<()> {
        match self.mode {
            EvalMode::Exact if g.m() > self.cap => Err(Error::EnumerationCap {
                edges: g.m(),
                cap: self.cap,
            }),
            EvalMode::Csp {
                epsilon,
                delta,
                samples,
            } => {
                if samples == Some(0) {
                    return Err(Error::InvalidParameter("sample budget must be positive".into()));
                }
                if samples.is_none()
                    && !(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0)
                {
                    return Err(Error::InvalidParameter(format!(
                        "epsilon {epsilon} and delta {delta} must lie in (0,1)"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// EPC with the nodes marked in `deleted` removed.
    pub fn sigma_mask(&self, g: &StochasticGraph, deleted: &[bool], seed: u64) -> Result<f64> {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        match self.mode {
            EvalMode::Exact => exact_on_mask(g, deleted, self.cap),
            EvalMode::Csp { .. } if residual_is_deterministic(g, deleted) => {
                Ok(g.deterministic_connectivity(deleted) as f64)
            }
            EvalMode::Csp {
                samples: Some(n), ..
            } => Ok(csp_fixed_on_mask(g, deleted, n, seed)),
            EvalMode::Csp {
                epsilon,
                delta,
                samples: None,
            } => csp_on_mask(g, deleted, epsilon, delta, seed).map(|(v, _)| v),
        }
    }

    pub fn sigma(&self, g: &StochasticGraph, s: &NodeSet, seed: u64) -> Result<f64> {
        s.validate_for(g.n())?;
        self.sigma_mask(g, &s.to_mask(g.n()), seed)
    }
}
