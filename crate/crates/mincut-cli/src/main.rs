//! Command-line front end: load a graph, optionally reduce it to the
//! largest component of a k-core, solve the exact minimum cut and report
//! in human-readable or JSON form.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use mincut::driver::{exact_mincut, recover_partition, DriverConfig};
use mincut::graph::{DegreeMode, Graph, VertexMap};
use mincut::io::load_graph;
use mincut::oracle::oracle_global_mincut;
use mincut::CapMode;

/// Largest instance the --check oracle will verify.
const CHECK_LIMIT: usize = 256;

#[derive(Parser)]
#[command(name = "mincut", version, about = "Exact minimum cuts of weighted undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the exact minimum cut of a graph file.
    Solve(SolveArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Input graph (.metis/.graph for METIS, .txt/.edges/.el for edge lists).
    input: PathBuf,

    /// Priority queue kind: heap, bstack or bqueue.
    #[arg(long, default_value = "heap")]
    queue: String,

    /// Worker threads for scan and contraction phases. Falls back to the
    /// MINCUT_THREADS environment variable, then to the hardware count.
    #[arg(long)]
    threads: Option<usize>,

    /// Seed for start-vertex and clustering randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Upper-bound method run before contraction: mindeg or lp.
    #[arg(long, default_value = "lp")]
    bound: String,

    /// Let queue priorities grow past the bound instead of clamping.
    #[arg(long)]
    uncapped: bool,

    /// Reduce to the k-core (weighted-degree peeling) before solving.
    #[arg(long)]
    kcore: Option<u64>,

    /// Reduce to the largest connected component before solving.
    #[arg(long)]
    lcc: bool,

    /// Write one side of the minimum cut, one original vertex id per line.
    #[arg(long)]
    partition: Option<PathBuf>,

    /// Emit the run report as a single JSON object.
    #[arg(long)]
    json: bool,

    /// Re-solve with the brute-force oracle (n <= 256) and fail on mismatch.
    #[arg(long)]
    check: bool,
}

#[derive(Serialize, Deserialize)]
struct PreprocessStep {
    step: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    n: usize,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct ConfigEcho {
    queue: String,
    threads: usize,
    seed: u64,
    bound: String,
    capped: bool,
}

#[derive(Serialize, Deserialize)]
struct Timings {
    load_ms: f64,
    preprocess_ms: f64,
    bound_ms: f64,
    rounds_ms: Vec<f64>,
    total_ms: f64,
}

#[derive(Serialize, Deserialize)]
struct RunReport {
    schema: u32,
    input: String,
    format: String,
    n_input: usize,
    m_input: usize,
    preprocess: Vec<PreprocessStep>,
    n: usize,
    m: usize,
    config: ConfigEcho,
    value: u64,
    rounds: u32,
    fallbacks: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<String>,
    timings: Timings,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => match solve(&args) {
            Ok(()) => 0,
            Err(err) => {
                eprintln!("error: {err:#}");
                1
            }
        },
    };
    std::process::exit(code);
}

fn resolve_threads(args: &SolveArgs) -> anyhow::Result<usize> {
    let threads = match args.threads {
        Some(t) => t,
        None => match std::env::var("MINCUT_THREADS") {
            Ok(v) => v
                .parse()
                .map_err(|_| anyhow!("MINCUT_THREADS must be a positive integer, got '{v}'"))?,
            Err(_) => std::thread::available_parallelism().map_or(1, |p| p.get()),
        },
    };
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    Ok(threads)
}

fn solve(args: &SolveArgs) -> anyhow::Result<()> {
    if args.kcore == Some(0) {
        bail!("--kcore 0 is a contradiction; the 0-core is the whole graph");
    }
    let threads = resolve_threads(args)?;

    let total_started = Instant::now();
    let load_started = Instant::now();
    let (input_graph, format) =
        load_graph(&args.input).with_context(|| format!("loading {}", args.input.display()))?;
    let load_ms = load_started.elapsed().as_secs_f64() * 1e3;

    // Preprocessing pipeline: k-core first, then largest component, each
    // recording the id map needed to report cuts in input-file ids.
    let pre_started = Instant::now();
    let mut preprocess = Vec::new();
    let mut maps: Vec<VertexMap> = Vec::new();
    let mut graph = input_graph;
    let (n_input, m_input) = (graph.n(), graph.m());
    if let Some(k) = args.kcore {
        let (core, map) = graph.k_core(k, DegreeMode::Weighted);
        preprocess.push(PreprocessStep {
            step: "kcore".into(),
            k: Some(k),
            n: core.n(),
            m: core.m(),
        });
        maps.push(map);
        graph = core;
    }
    if args.lcc {
        let (lcc, map) = graph.largest_connected_component();
        preprocess.push(PreprocessStep {
            step: "lcc".into(),
            k: None,
            n: lcc.n(),
            m: lcc.m(),
        });
        maps.push(map);
        graph = lcc;
    }
    let preprocess_ms = pre_started.elapsed().as_secs_f64() * 1e3;

    let config = DriverConfig {
        queue: args.queue.clone(),
        workers: threads,
        seed: args.seed,
        bound: args.bound.clone(),
        cap_mode: if args.uncapped {
            CapMode::Uncapped
        } else {
            CapMode::Capped
        },
        emit_partition: args.partition.is_some(),
    };
    let result = exact_mincut(&graph, &config).context("solving")?;

    let check = if args.check {
        Some(run_check(&graph, result.value)?)
    } else {
        None
    };

    let (partition_file, partition_size) = match (&args.partition, &result.partition) {
        (Some(path), Some(side)) => {
            let original = recover_partition(&maps, side);
            let mut out = String::with_capacity(original.len() * 8);
            for v in &original {
                out.push_str(&v.to_string());
                out.push('\n');
            }
            std::fs::write(path, out)
                .with_context(|| format!("writing partition to {}", path.display()))?;
            (Some(path.display().to_string()), Some(original.len()))
        }
        _ => (None, None),
    };

    let report = RunReport {
        schema: 1,
        input: args.input.display().to_string(),
        format: format.name().to_string(),
        n_input,
        m_input,
        preprocess,
        n: graph.n(),
        m: graph.m(),
        config: ConfigEcho {
            queue: args.queue.clone(),
            threads,
            seed: args.seed,
            bound: args.bound.clone(),
            capped: !args.uncapped,
        },
        value: result.value,
        rounds: result.rounds,
        fallbacks: result.stats.fallbacks,
        partition_file,
        partition_size,
        check,
        timings: Timings {
            load_ms,
            preprocess_ms,
            bound_ms: result.stats.bound_millis,
            rounds_ms: result.stats.rounds.iter().map(|r| r.millis).collect(),
            total_ms: total_started.elapsed().as_secs_f64() * 1e3,
        },
    };

    let mut stdout = std::io::stdout().lock();
    if args.json {
        serde_json::to_writer(&mut stdout, &report)?;
        writeln!(stdout)?;
    } else {
        print_human(&mut stdout, &report)?;
    }
    Ok(())
}

fn run_check(graph: &Graph, value: u64) -> anyhow::Result<String> {
    if graph.n() > CHECK_LIMIT {
        return Ok("skipped".into());
    }
    if graph.n() < 2 {
        bail!("--check needs at least two vertices after preprocessing");
    }
    let oracle = oracle_global_mincut(graph);
    if oracle.value != value {
        bail!(
            "check failed: solver found {value} but the oracle found {}",
            oracle.value
        );
    }
    Ok("ok".into())
}

fn print_human(out: &mut impl Write, r: &RunReport) -> anyhow::Result<()> {
    writeln!(
        out,
        "input: {} ({}) n={} m={}",
        r.input, r.format, r.n_input, r.m_input
    )?;
    for step in &r.preprocess {
        match step.k {
            Some(k) => writeln!(out, "  {} k={}: n={} m={}", step.step, k, step.n, step.m)?,
            None => writeln!(out, "  {}: n={} m={}", step.step, step.n, step.m)?,
        }
    }
    writeln!(
        out,
        "config: queue={} threads={} seed={} bound={} {}",
        r.config.queue,
        r.config.threads,
        r.config.seed,
        r.config.bound,
        if r.config.capped { "capped" } else { "uncapped" }
    )?;
    writeln!(out, "minimum cut: {}", r.value)?;
    writeln!(out, "rounds: {} (fallbacks: {})", r.rounds, r.fallbacks)?;
    let rounds_ms: f64 = r.timings.rounds_ms.iter().sum();
    writeln!(
        out,
        "times: load {:.1} ms, preprocess {:.1} ms, bound {:.1} ms, rounds {:.1} ms, total {:.1} ms",
        r.timings.load_ms, r.timings.preprocess_ms, r.timings.bound_ms, rounds_ms, r.timings.total_ms
    )?;
    if let (Some(file), Some(size)) = (&r.partition_file, r.partition_size) {
        writeln!(out, "partition: {size} vertices -> {file}")?;
    }
    if let Some(check) = &r.check {
        writeln!(out, "check: {check}")?;
    }
    Ok(())
}
