//! Benchmark grid over a directory of graphs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use log::{info, warn};
use maxcut_core::init::InitMethod;
use maxcut_core::presets::ParamsMode;
use maxcut_core::record::{aggregate, AggregateRow, RunRecord};
use maxcut_core::solvers::solve_per_component;
use maxcut_core::{Algorithm, Graph};
use serde::Serialize;

use crate::config::{split_list, AlgoArg, InitArg, ParamsArg, SolverArgs};
use crate::error::{CliError, CliResult};
use crate::{graph_id, load_graph, out_dir, write_file};

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    /// Directory of edge-list files; every regular file is loaded.
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, default_value = "pquco,pluco,pdeco")]
    algos: String,
    #[arg(long, default_value = "idi")]
    inits: String,
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Lifting dimensions for pluco and pdeco; `n` means the node count.
    #[arg(long)]
    sweep_lift: Option<String>,
    /// Parameter modes to run, `manual` and/or `auto`.
    #[arg(long, default_value = "manual")]
    params: String,
    /// Output directory; defaults to `bench` under $MAXCUT_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent runs. Above 1, mean times are left out of the aggregate.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Clone, Copy)]
enum Lift {
    Fixed(usize),
    Nodes,
}

#[derive(Debug, Clone)]
struct Job {
    graph: usize,
    algorithm: Algorithm,
    init: InitMethod,
    params: ParamsMode,
    lift: Lift,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct Failure {
    graph: String,
    algorithm: String,
    init: String,
    params: String,
    lift: Option<usize>,
    seed: u64,
    error: String,
    numeric: bool,
}

fn parse_list<T>(flag: &str, raw: &str, f: impl Fn(&str) -> Option<T>) -> CliResult<Vec<T>> {
    let items = split_list(raw);
    if items.is_empty() {
        return Err(CliError::usage(format!("--{flag} is empty")));
    }
    items
        .iter()
        .map(|s| f(s).ok_or_else(|| CliError::usage(format!("invalid --{flag} entry {s:?}"))))
        .collect()
}

fn value_enum<T: clap::ValueEnum>(s: &str) -> Option<T> {
    T::from_str(s, true).ok()
}

fn graph_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(CliError::usage(format!(
            "no graph files in {}",
            dir.display()
        )));
    }
    Ok(files)
}

pub fn run(args: BenchArgs) -> CliResult<()> {
    if args.jobs == 0 {
        return Err(CliError::usage("--jobs must be at least 1"));
    }
    let algos: Vec<Algorithm> = parse_list("algos", &args.algos, |s| {
        value_enum::<AlgoArg>(s).map(Into::into)
    })?;
    let inits: Vec<InitMethod> = parse_list("inits", &args.inits, |s| {
        value_enum::<InitArg>(s).map(Into::into)
    })?;
    let modes: Vec<ParamsMode> = parse_list("params", &args.params, |s| {
        value_enum::<ParamsArg>(s).map(Into::into)
    })?;
    let seeds: Vec<u64> = parse_list("seeds", &args.seeds, |s| s.parse().ok())?;
    let lifts: Vec<Lift> = match &args.sweep_lift {
        Some(raw) => parse_list("sweep-lift", raw, |s| match s {
            "n" => Some(Lift::Nodes),
            _ => s.parse().ok().map(Lift::Fixed),
        })?,
        None => vec![Lift::Fixed(args.solver.lift)],
    };

    let files = graph_files(&args.dir)?;
    let graphs: Vec<(String, Result<Graph, String>)> = files
        .iter()
        .map(|p| (graph_id(p), load_graph(p).map_err(|e| e.to_string())))
        .collect();

    let mut jobs = Vec::new();
    for graph in 0..graphs.len() {
        for &algorithm in &algos {
            let job_lifts: &[Lift] = if algorithm == Algorithm::Pquco {
                &[Lift::Fixed(1)]
            } else {
                &lifts
            };
            for &init in &inits {
                for &params in &modes {
                    for &lift in job_lifts {
                        for &seed in &seeds {
                            jobs.push(Job {
                                graph,
                                algorithm,
                                init,
                                params,
                                lift,
                                seed,
                            });
                        }
                    }
                }
            }
        }
    }

    let results: Vec<Result<RunRecord, Failure>> =
        run_jobs(&jobs, args.jobs, |job| run_job(&args.solver, &graphs, job));
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(f) => {
                warn!(
                    "{} {} seed {} failed: {}",
                    f.graph, f.algorithm, f.seed, f.error
                );
                failures.push(f)
            }
        }
    }

    let out = args.out.clone().unwrap_or_else(|| out_dir().join("bench"));
    let mut lines = Vec::new();
    for rec in &records {
        writeln!(lines, "{}", serde_json::to_string(rec)?).expect("write to memory");
    }
    write_file(&out.join("records.jsonl"), &lines)?;
    let mut lines = Vec::new();
    for f in &failures {
        writeln!(lines, "{}", serde_json::to_string(f)?).expect("write to memory");
    }
    write_file(&out.join("failures.jsonl"), &lines)?;

    let rows = aggregate(&records, args.jobs == 1);
    let csv = aggregate_csv(&rows)?;
    write_file(&out.join("aggregate.csv"), csv.as_bytes())?;
    print!("{csv}");
    println!("runs={} failures={}", records.len(), failures.len());
    info!("results written to {}", out.display());

    if records.is_empty() {
        return Err(CliError::AllRunsFailed {
            runs: failures.len(),
            numeric: failures.iter().all(|f| f.numeric),
        });
    }
    Ok(())
}

/// Runs `jobs` on `workers` threads and returns results in job order.
fn run_jobs<T, F>(jobs: &[Job], workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Job) -> T + Sync,
{
    if workers <= 1 {
        return jobs.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers.min(jobs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let r = f(job);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

fn run_job(
    solver: &SolverArgs,
    graphs: &[(String, Result<Graph, String>)],
    job: &Job,
) -> Result<RunRecord, Failure> {
    let (id, loaded) = &graphs[job.graph];
    let fail = |lift: Option<usize>, error: String, numeric: bool| Failure {
        graph: id.clone(),
        algorithm: job.algorithm.to_string(),
        init: job.init.to_string(),
        params: job.params.to_string(),
        lift,
        seed: job.seed,
        error,
        numeric,
    };
    let g = loaded.as_ref().map_err(|e| fail(None, e.clone(), false))?;
    let lift = match job.lift {
        Lift::Fixed(l) => l,
        Lift::Nodes => g.node_count(),
    };
    let cfg = solver.build(job.algorithm, job.init, job.params, lift);
    let report = solve_per_component(g, &cfg, job.seed)
        .map_err(|e| fail(Some(lift), e.to_string(), e.is_numeric()))?;
    Ok(RunRecord::new(
        id,
        g,
        &cfg,
        job.params.to_string(),
        job.seed,
        &report,
    ))
}

fn aggregate_csv(rows: &[AggregateRow]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "algorithm",
        "init",
        "mean_cut",
        "mean_time_s",
        "n_runs",
        "lift",
        "params",
        "min_cut",
        "max_cut",
        "std_cut",
    ])?;
    for r in rows {
        w.write_record([
            r.algorithm.clone(),
            r.init.clone(),
            format!("{}", r.mean_cut),
            r.mean_time_s.map(|t| format!("{t:.6}")).unwrap_or_default(),
            r.n_runs.to_string(),
            r.lift.to_string(),
            r.params.clone(),
            r.min_cut.to_string(),
            r.max_cut.to_string(),
            format!("{}", r.std_cut),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
