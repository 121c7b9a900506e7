//! Runs the instance × setting × algorithm grid of an experiment.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use scndp_core::generators::{assign_probabilities, generate, ProbabilitySpec};
use scndp_core::rng::{derive, derive_str};
use scndp_core::StochasticGraph;

use crate::algorithm::Algorithm;
use crate::config::{setting_label, AlgorithmSpec, ExperimentConfig};
use crate::error::{BenchError, Result};
use crate::load_graph;
use crate::record::{RunRecord, Status, Timings};
use crate::runner::{solve, SolveSettings};

pub const WORKERS_ENV: &str = "SCNDP_WORKERS";

/// Seed of one cell. Depends only on the cell's own coordinates, so adding
/// cells leaves the others unchanged.
pub fn cell_seed(master: u64, instance: &str, algorithm: Algorithm, setting: usize) -> u64 {
    derive(derive_str(derive_str(master, instance), algorithm.name()), setting as u64)
}

/// Seed for drawing the probabilities of one instance under one setting,
/// shared by every algorithm.
pub fn setting_seed(master: u64, instance: &str, setting: usize) -> u64 {
    derive(derive_str(derive_str(master, instance), "probabilities"), setting as u64)
}

/// Worker count: the explicit request, then the environment override, then
/// the config, then one per available core.
pub fn resolve_workers(requested: Option<usize>, config: &ExperimentConfig) -> Result<usize> {
    if let Some(w) = requested {
        return Ok(w.max(1));
    }
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        return v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| BenchError::Config(format!("{WORKERS_ENV}=`{v}` is not a positive integer")));
    }
    Ok(config
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
}

struct Cell {
    instance: usize,
    setting: usize,
    algorithm: AlgorithmSpec,
}

pub struct BenchReport {
    pub records: Vec<RunRecord>,
    pub failed: usize,
}

fn base_graph(config: &ExperimentConfig, i: usize) -> Result<StochasticGraph> {
    let inst = &config.instances[i];
    match (&inst.file, &inst.topology) {
        (Some(file), _) => load_graph(file),
        (None, Some(topology)) => {
            let seed = inst.seed.unwrap_or_else(|| derive(config.master_seed, i as u64));
            let probs = inst.probs.unwrap_or(ProbabilitySpec::Uniform01);
            Ok(generate(topology, &probs, seed)?)
        }
        (None, None) => Err(BenchError::Config(format!("instance {i} has no source"))),
    }
}

/// Runs every cell on a pool of `workers` threads. Records come back in
/// grid order whatever the scheduling.
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> Result<BenchReport> {
    config.validate()?;
    let settings: Vec<Option<ProbabilitySpec>> = match &config.sweep {
        Some(sweep) if !sweep.settings().is_empty() => sweep.settings().into_iter().map(Some).collect(),
        _ => vec![None],
    };
    let ids: Vec<String> = (0..config.instances.len()).map(|i| config.instance_id(i)).collect();

    let mut graphs = Vec::new();
    for (i, id) in ids.iter().enumerate() {
        let base = base_graph(config, i)?;
        let k = config.budget(base.n());
        if k > base.n() {
            return Err(scndp_core::Error::BudgetTooLarge { k, n: base.n() }.into());
        }
        let mut per_setting = Vec::with_capacity(settings.len());
        for (s, spec) in settings.iter().enumerate() {
            per_setting.push(match spec {
                Some(spec) => assign_probabilities(&base, spec, setting_seed(config.master_seed, id, s))?,
                None => base.clone(),
            });
        }
        graphs.push(per_setting);
    }

    let mut cells = Vec::new();
    for instance in 0..ids.len() {
        for setting in 0..settings.len() {
            for entry in &config.algorithms {
                cells.push(Cell {
                    instance,
                    setting,
                    algorithm: entry.spec(),
                });
            }
        }
    }

    let hash = config.hash();
    let run_cell = |cell: &Cell| -> RunRecord {
        let g = &graphs[cell.instance][cell.setting];
        let id = &ids[cell.instance];
        let k = config.budget(g.n());
        let alg = cell.algorithm.name;
        let seed = cell_seed(config.master_seed, id, alg, cell.setting);
        let solve_settings = SolveSettings {
            algorithm: alg,
            exact: config.exact,
            epsilon: config.epsilon,
            delta: config.delta,
            local_search: cell.algorithm.local_search.unwrap_or(config.local_search),
            ls_samples: config.ls_samples,
            final_samples: config.final_samples,
            mis_trials: cell.algorithm.mis_trials,
            mis_lazy: cell.algorithm.lazy.unwrap_or(false),
            seed,
        };
        let mut record = RunRecord {
            instance: id.clone(),
            algorithm: alg,
            setting: setting_label(settings[cell.setting].as_ref()),
            n: g.n(),
            m: g.m(),
            k,
            epc: None,
            selection: None,
            seconds: Timings::default(),
            seed,
            config_hash: hash.clone(),
            status: Status::Ok,
            error: None,
        };
        match solve(g, k, &solve_settings) {
            Ok(out) => {
                record.epc = Some(out.epc);
                record.selection = Some(out.selection);
                record.seconds = out.seconds;
            }
            Err(e) => {
                record.status = Status::Error;
                record.error = Some(e.to_string());
            }
        }
        record
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| BenchError::Config(format!("cannot start {workers} workers: {e}")))?;
    let records: Vec<RunRecord> = pool.install(|| cells.par_iter().map(run_cell).collect());
    let failed = records.iter().filter(|r| r.status == Status::Error).count();
    Ok(BenchReport { records, failed })
}

/// Pivot with one row per (instance, setting) and an EPC and a runtime
/// column per algorithm. Runtime covers selection and local search.
pub fn summary_csv(records: &[RunRecord]) -> String {
    let mut algorithms: Vec<Algorithm> = Vec::new();
    let mut rows: Vec<(&str, &str, usize)> = Vec::new();
    for r in records {
        if !algorithms.contains(&r.algorithm) {
            algorithms.push(r.algorithm);
        }
        let key = (r.instance.as_str(), r.setting.as_str(), r.k);
        if !rows.contains(&key) {
            rows.push(key);
        }
    }
    let mut out = String::from("instance,setting,k");
    for a in &algorithms {
        write!(out, ",{a}_epc,{a}_seconds").unwrap();
    }
    out.push('\n');
    for (instance, setting, k) in rows {
        write!(out, "{instance},{setting},{k}").unwrap();
        for a in &algorithms {
            let found = records
                .iter()
                .find(|r| r.instance == instance && r.setting == setting && r.algorithm == *a);
            match found.and_then(|r| r.epc.as_ref().map(|e| (e.value, r.seconds))) {
                Some((value, t)) => write!(out, ",{value:?},{:.3}", t.select + t.local_search).unwrap(),
                None => out.push_str(",error,"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn write_outputs(dir: &Path, report: &BenchReport) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut lines = String::new();
    for r in &report.records {
        lines.push_str(&r.to_json_line());
        lines.push('\n');
    }
    std::fs::write(dir.join("records.jsonl"), lines)?;
    std::fs::write(dir.join("summary.csv"), summary_csv(&report.records))?;
    Ok(())
}
