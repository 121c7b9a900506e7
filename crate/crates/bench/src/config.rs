//! Declarative experiment description, read from TOML.
//!
//! ```toml
//! master_seed = 42
//! k_ratio = 0.1
//! local_search = true
//! algorithms = ["greedy", { name = "greedy-mis", mis_trials = 10 }]
//!
//! [[instances]]
//! topology = "er:100:200"
//! seed = 1
//!
//! [[instances]]
//! file = "graphs/ws.sg"
//!
//! [sweep]
//! constant = [0.1, 0.5, 1.0]
//! distributions = ["uniform", "beta"]
//! ```

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use scndp_core::generators::{ProbabilitySpec, TopologySpec};
use scndp_core::heuristics::default_budget;

use crate::algorithm::Algorithm;
use crate::error::{read_text, BenchError, Result};
use crate::runner::{DEFAULT_DELTA, DEFAULT_EPSILON, DEFAULT_FINAL_SAMPLES, DEFAULT_LS_SAMPLES};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    #[serde(default)]
    pub workers: Option<usize>,
    /// Fixed budget. Takes precedence over `k_ratio`.
    #[serde(default)]
    pub k: Option<usize>,
    /// Budget as a fraction of n, rounded up. Defaults to 0.1.
    #[serde(default)]
    pub k_ratio: Option<f64>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub exact: bool,
    #[serde(default)]
    pub local_search: bool,
    #[serde(default = "default_ls_samples")]
    pub ls_samples: u64,
    #[serde(default = "default_final_samples")]
    pub final_samples: u64,
    pub instances: Vec<InstanceSpec>,
    pub algorithms: Vec<AlgorithmEntry>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}
fn default_delta() -> f64 {
    DEFAULT_DELTA
}
fn default_ls_samples() -> u64 {
    DEFAULT_LS_SAMPLES
}
fn default_final_samples() -> u64 {
    DEFAULT_FINAL_SAMPLES
}

/// A graph file or a generator recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default)]
    pub file: Option<PathBuf>,
    #[serde(default)]
    pub topology: Option<TopologySpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Probabilities for generated instances when no sweep is given.
    #[serde(default)]
    pub probs: Option<ProbabilitySpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgorithmEntry {
    Name(Algorithm),
    Detailed(AlgorithmSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    pub name: Algorithm,
    #[serde(default)]
    pub local_search: Option<bool>,
    #[serde(default)]
    pub mis_trials: Option<usize>,
    #[serde(default)]
    pub lazy: Option<bool>,
}

impl AlgorithmEntry {
    pub fn spec(&self) -> AlgorithmSpec {
        match self {
            Self::Name(name) => AlgorithmSpec {
                name: *name,
                local_search: None,
                mis_trials: None,
                lazy: None,
            },
            Self::Detailed(spec) => spec.clone(),
        }
    }
}

/// Probability settings applied to every instance. An empty sweep keeps
/// each instance's own probabilities.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub constant: Vec<f64>,
    #[serde(default)]
    pub distributions: Vec<ProbabilitySpec>,
}

impl SweepSpec {
    /// Uniform edge probability 0.1, 0.2, ..., 1.0.
    pub fn constant_grid() -> Self {
        Self {
            constant: (1..=10).map(|i| i as f64 / 10.0).collect(),
            distributions: Vec::new(),
        }
    }

    pub fn settings(&self) -> Vec<ProbabilitySpec> {
        self.constant
            .iter()
            .map(|&p| ProbabilitySpec::Constant(p))
            .chain(self.distributions.iter().copied())
            .collect()
    }
}

/// Label used for a probability setting in records and tables.
pub fn setting_label(spec: Option<&ProbabilitySpec>) -> String {
    match spec {
        Some(ProbabilitySpec::Constant(p)) => format!("p={p:?}"),
        Some(other) => other.to_string(),
        None => "base".into(),
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config and resolves instance files against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let mut config = Self::from_toml(&read_text(path)?)?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        for inst in &mut config.instances {
            if let Some(file) = &inst.file {
                if file.is_relative() {
                    inst.file = Some(base.join(file));
                }
            }
        }
        for inst in &config.instances {
            if let Some(file) = &inst.file {
                if !file.is_file() {
                    return Err(BenchError::Config(format!("instance file {} not found", file.display())));
                }
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(BenchError::Config(msg));
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon {} not in (0,1)", self.epsilon));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta {} not in (0,1)", self.delta));
        }
        if let Some(r) = self.k_ratio {
            if !(0.0..=1.0).contains(&r) {
                return bad(format!("k_ratio {r} not in [0,1]"));
            }
        }
        if self.workers == Some(0) {
            return bad("workers must be positive".into());
        }
        if self.instances.is_empty() || self.algorithms.is_empty() {
            return bad("need at least one instance and one algorithm".into());
        }
        for (i, inst) in self.instances.iter().enumerate() {
            if inst.file.is_some() == inst.topology.is_some() {
                return bad(format!("instance {i} needs exactly one of `file` or `topology`"));
            }
        }
        let mut ids = HashSet::new();
        for i in 0..self.instances.len() {
            let id = self.instance_id(i);
            if !ids.insert(id.clone()) {
                return bad(format!("duplicate instance id `{id}`"));
            }
        }
        for entry in &self.algorithms {
            if entry.spec().name == Algorithm::External {
                return bad("`external` is not a solver".into());
            }
        }
        if let Some(sweep) = &self.sweep {
            for spec in sweep.settings() {
                spec.validate()?;
            }
        }
        Ok(())
    }

    pub fn instance_id(&self, i: usize) -> String {
        let inst = &self.instances[i];
        if let Some(id) = &inst.id {
            return id.clone();
        }
        if let Some(file) = &inst.file {
            if let Some(stem) = file.file_stem() {
                return stem.to_string_lossy().into_owned();
            }
        }
        match inst.topology {
            Some(t) => format!("{}_n{}_s{}", t.kind(), t.n(), inst.seed.unwrap_or(i as u64)),
            None => format!("instance{i}"),
        }
    }

    pub fn budget(&self, n: usize) -> usize {
        match (self.k, self.k_ratio) {
            (Some(k), _) => k,
            (None, Some(r)) => (r * n as f64).ceil() as usize,
            (None, None) => default_budget(n),
        }
    }

    /// Hash of everything that determines results; the worker count is left
    /// out.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.workers = None;
        crate::record::config_hash(&c)
    }
}
