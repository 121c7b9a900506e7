use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use scndp_core::epc::{csp_estimate, csp_estimate_fixed, exact_epc};
use scndp_core::generators::{generate, instance_file_name, scale_presets, ProbabilitySpec, TopologySpec};
use scndp_core::heuristics::default_budget;
use scndp_core::{NodeSet, StochasticGraph};

use crate::algorithm::Algorithm;
use crate::bench::{resolve_workers, run_experiment, write_outputs};
use crate::config::ExperimentConfig;
use crate::error::{BenchError, Result};
use crate::load_graph;
use crate::record::{config_hash, RunRecord, Status, Timings};
use crate::runner::{
    score, solve, SolveSettings, DEFAULT_DELTA, DEFAULT_EPSILON, DEFAULT_FINAL_SAMPLES,
    DEFAULT_LS_SAMPLES,
};
use crate::selection::{parse_id_list, read_selection, write_selection};

#[derive(Debug, Parser)]
#[command(name = "scndp", version, about = "Stochastic critical node detection solvers and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate random instances.
    Generate(GenerateArgs),
    /// Estimate the EPC of a graph after deleting some nodes.
    Estimate(EstimateArgs),
    /// Select k nodes with one algorithm and print a run record.
    Solve(SolveArgs),
    /// Run an experiment grid from a TOML config.
    Bench(BenchArgs),
    /// Score a selection produced elsewhere.
    ScoreExternal(ScoreArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// `er:N:M`, `ba:N:M_TOTAL` or `ws:N:DEGREE:REWIRE_P`
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    topology: Option<String>,
    /// Write the ER, BA and WS instances for this size (100, 200, 300 or 500).
    #[arg(long)]
    preset: Option<usize>,
    /// `const:P`, `uniform`, `beta[:A:B]` or `normal[:MEAN:SD]`
    #[arg(long, default_value = "uniform")]
    probs: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Exact output path; only with --topology.
    #[arg(long, conflicts_with = "preset")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    graph: PathBuf,
    /// Selection file with the deleted nodes.
    #[arg(long, conflicts_with = "ids")]
    deletion: Option<PathBuf>,
    /// Deleted nodes as a comma-separated list.
    #[arg(long)]
    ids: Option<String>,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Fixed number of sampling trials instead of the (epsilon, delta) count.
    #[arg(long, conflicts_with = "exact")]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate every live-edge scenario.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Score candidates and the result exactly (small graphs only).
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Sampling trials per local-search evaluation.
    #[arg(long, default_value_t = DEFAULT_LS_SAMPLES)]
    ls_samples: u64,
    /// Sampling trials for the reported EPC.
    #[arg(long, default_value_t = DEFAULT_FINAL_SAMPLES)]
    final_samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long)]
    alg: String,
    /// Deletion budget; defaults to a tenth of the nodes, rounded up.
    #[arg(long)]
    k: Option<usize>,
    /// Refine the selection with swap local search.
    #[arg(long)]
    ls: bool,
    #[arg(long)]
    mis_trials: Option<usize>,
    #[arg(long)]
    mis_lazy: bool,
    #[command(flatten)]
    eval: EvalArgs,
    /// Also write the selection to this file.
    #[arg(long)]
    selection_out: Option<PathBuf>,
    /// Instance name for the record; defaults to the file stem.
    #[arg(long)]
    instance: Option<String>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    config: PathBuf,
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    /// Worker threads; overrides the SCNDP_WORKERS variable and the config.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    graph: PathBuf,
    selection: PathBuf,
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = DEFAULT_FINAL_SAMPLES)]
    final_samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    instance: Option<String>,
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("scndp: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Generate(a) => cmd_generate(a, out),
        Command::Estimate(a) => cmd_estimate(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::ScoreExternal(a) => cmd_score_external(a, out),
    }
}

fn cmd_generate(a: GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let probs: ProbabilitySpec = a.probs.parse()?;
    let topologies: Vec<TopologySpec> = match (a.topology, a.preset) {
        (Some(t), _) => vec![t.parse()?],
        (None, Some(n)) => scale_presets(n)?.to_vec(),
        (None, None) => unreachable!("clap requires one of them"),
    };
    for topology in topologies {
        let g = generate(&topology, &probs, a.seed)?;
        let path = match &a.output {
            Some(p) => p.clone(),
            None => {
                std::fs::create_dir_all(&a.out_dir)?;
                a.out_dir.join(instance_file_name(&topology, a.seed))
            }
        };
        let comment = format!("{topology} probs={probs} seed={}", a.seed);
        std::fs::write(&path, g.to_text(Some(&comment)))?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(())
}

fn deletion_from(file: Option<&PathBuf>, ids: Option<&str>) -> Result<NodeSet> {
    match (file, ids) {
        (Some(path), _) => read_selection(path),
        (None, Some(list)) => parse_id_list(list),
        (None, None) => Ok(NodeSet::empty()),
    }
}

fn cmd_estimate(a: EstimateArgs, out: &mut dyn Write) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let s = deletion_from(a.deletion.as_ref(), a.ids.as_deref())?;
    let est = if a.exact {
        exact_epc(&g, &s)?
    } else if let Some(samples) = a.samples {
        csp_estimate_fixed(&g, &s, samples, a.seed)?
    } else {
        csp_estimate(&g, &s, a.epsilon, a.delta, a.seed)?
    };
    writeln!(out, "{}", serde_json::to_string(&est)?)?;
    Ok(())
}

fn instance_name(explicit: Option<String>, path: &std::path::Path) -> String {
    explicit.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".into())
    })
}

fn settings_from(alg: Algorithm, eval: &EvalArgs) -> SolveSettings {
    SolveSettings {
        exact: eval.exact,
        epsilon: eval.epsilon,
        delta: eval.delta,
        ls_samples: eval.ls_samples,
        final_samples: eval.final_samples,
        ..SolveSettings::new(alg, eval.seed)
    }
}

fn check_accuracy(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0) {
        return Err(scndp_core::Error::InvalidParameter(format!(
            "epsilon {epsilon} and delta {delta} must lie in (0,1)"
        ))
        .into());
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<()> {
    let alg: Algorithm = a.alg.parse()?;
    if alg == Algorithm::External {
        return Err(BenchError::UnknownAlgorithm(a.alg));
    }
    check_accuracy(a.eval.epsilon, a.eval.delta)?;
    let g = load_graph(&a.graph)?;
    let k = a.k.unwrap_or_else(|| default_budget(g.n()));
    let settings = SolveSettings {
        local_search: a.ls,
        mis_trials: a.mis_trials,
        mis_lazy: a.mis_lazy,
        ..settings_from(alg, &a.eval)
    };
    let outcome = solve(&g, k, &settings)?;
    if let Some(path) = &a.selection_out {
        write_selection(path, &outcome.selection)?;
    }
    let record = RunRecord {
        instance: instance_name(a.instance, &a.graph),
        algorithm: alg,
        setting: "base".into(),
        n: g.n(),
        m: g.m(),
        k,
        epc: Some(outcome.epc),
        selection: Some(outcome.selection),
        seconds: outcome.seconds,
        seed: settings.seed,
        config_hash: config_hash(&settings),
        status: Status::Ok,
        error: None,
    };
    writeln!(out, "{}", record.to_json_line())?;
    Ok(())
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<()> {
    let config = ExperimentConfig::load(&a.config)?;
    let workers = resolve_workers(a.workers, &config)?;
    let report = run_experiment(&config, workers)?;
    write_outputs(&a.out_dir, &report)?;
    writeln!(
        out,
        "{} records written to {}",
        report.records.len(),
        a.out_dir.display()
    )?;
    for r in report.records.iter().filter(|r| r.status == Status::Error) {
        eprintln!(
            "scndp: {} {} {}: {}",
            r.instance,
            r.setting,
            r.algorithm,
            r.error.as_deref().unwrap_or("")
        );
    }
    if report.failed > 0 {
        return Err(BenchError::CellsFailed {
            failed: report.failed,
            total: report.records.len(),
        });
    }
    Ok(())
}

/// Scores an externally produced deletion set with the standard reporting
/// protocol.
pub fn score_external(
    g: &StochasticGraph,
    s: &NodeSet,
    instance: String,
    settings: &SolveSettings,
) -> Result<RunRecord> {
    s.validate_for(g.n())?;
    let clock = std::time::Instant::now();
    let epc = score(g, s, settings)?;
    Ok(RunRecord {
        instance,
        algorithm: Algorithm::External,
        setting: "base".into(),
        n: g.n(),
        m: g.m(),
        k: s.len(),
        epc: Some(epc),
        selection: Some(s.clone()),
        seconds: Timings {
            final_estimate: clock.elapsed().as_secs_f64(),
            ..Timings::default()
        },
        seed: settings.seed,
        config_hash: config_hash(settings),
        status: Status::Ok,
        error: None,
    })
}

fn cmd_score_external(a: ScoreArgs, out: &mut dyn Write) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let s = read_selection(&a.selection)?;
    let settings = SolveSettings {
        exact: a.exact,
        final_samples: a.final_samples,
        ..SolveSettings::new(Algorithm::External, a.seed)
    };
    let record = score_external(&g, &s, instance_name(a.instance, &a.graph), &settings)?;
    writeln!(out, "{}", record.to_json_line())?;
    Ok(())
}
