mod bench;
mod config;
mod error;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use maxcut_core::oracle::brute_force_maxcut;
use maxcut_core::presets::ParamsMode;
use maxcut_core::record::RunRecord;
use maxcut_core::solvers::solve_per_component;
use maxcut_core::{generate_er, parse_edge_list, with_workers, Graph};

use crate::config::{AlgoArg, InitArg, ParamsArg, SolverArgs};
use crate::error::{CliError, CliResult};

/// Default directory for records when no explicit output path is given.
pub const OUT_DIR_ENV: &str = "MAXCUT_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "maxcut-out";

#[derive(Debug, Parser)]
#[command(
    name = "maxcut",
    version,
    about = "Projected gradient ascent MaxCut solvers"
)]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one graph and write its run record.
    Solve(SolveArgs),
    /// Generate an Erdos-Renyi graph in edge-list format.
    Gen(GenArgs),
    /// Exhaustive optimum for graphs with at most 26 nodes.
    Oracle(OracleArgs),
    /// Run a grid of solver configurations over a directory of graphs.
    Bench(bench::BenchArgs),
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "pdeco")]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "idi")]
    init: InitArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "manual")]
    params: ParamsArg,
    /// Record path; defaults to a file under $MAXCUT_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write every search evaluation as one JSON object per line.
    #[arg(long)]
    search_trace: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
}

pub fn out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

pub fn graph_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn load_graph(path: &Path) -> CliResult<Graph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(parse_edge_list(&text)?)
}

pub fn write_file(path: &Path, contents: &[u8]) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn solve(args: SolveArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let params: ParamsMode = args.params.into();
    let cfg = args
        .solver
        .build(args.algo.into(), args.init.into(), params, args.solver.lift);
    let report = solve_per_component(&g, &cfg, args.seed)?;
    let id = graph_id(&args.graph);
    let record = RunRecord::new(&id, &g, &cfg, params.to_string(), args.seed, &report);
    let path = args.out.unwrap_or_else(|| {
        out_dir().join(format!(
            "{id}-{}-{}-s{}.json",
            record.algorithm, record.init, args.seed
        ))
    });
    write_file(&path, serde_json::to_string_pretty(&record)?.as_bytes())?;
    if let Some(trace) = &args.search_trace {
        let mut lines = Vec::new();
        for s in &record.search_trace {
            for e in &s.events {
                let line = serde_json::json!({
                    "component": s.component,
                    "after_batch": s.after_batch,
                    "formulation": s.formulation,
                    "round": e.round,
                    "exponent": e.exponent,
                    "iterations": e.iterations,
                    "fitness": e.fitness,
                });
                writeln!(lines, "{line}").expect("write to memory");
            }
        }
        write_file(trace, &lines)?;
    }
    println!("cut={} time={:.3}", record.best_cut, record.wall_time_s);
    Ok(())
}

fn generate(args: GenArgs) -> CliResult<()> {
    let g = generate_er(args.n, args.p, args.seed)?;
    let text = g.to_edge_list();
    match &args.out {
        Some(path) => write_file(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn oracle(args: OracleArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let r = brute_force_maxcut(&g)?;
    let witness: String = r.witness.iter().map(|b| char::from(b'0' + b)).collect();
    println!("optimum={}", r.optimum);
    println!("witness={witness}");
    println!("count={}", r.count_optimal);
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Gen(a) => generate(a),
        Command::Oracle(a) => oracle(a),
        Command::Bench(a) => bench::run(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(n) => with_workers(n, || run(cli)).unwrap_or_else(|e| Err(e.into())),
        None => run(cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
