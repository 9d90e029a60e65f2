use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use dcut::colouring::{oracle_solve_with, OracleConfig, OracleOutcome};
use dcut::generate::{generate, GenConfig, GraphClass};
use dcut::graph::{emit_graph6, Graph};
use dcut::solvers::SolveError;

use crate::{input, parse_class, run_algo, write, Algo, CmdResult, ERROR, NO, YES};

#[derive(Args, Debug, Clone, Serialize)]
pub struct CrosscheckArgs {
    /// graph6 file to check instead of random graphs.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Class to generate, or to filter the corpus by.
    #[arg(long, value_parser = parse_class)]
    class: Option<GraphClass>,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    d: Vec<usize>,
    /// Random graphs per vertex count.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Required for random campaigns.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "auto")]
    algo: Algo,
    /// Per-instance limit in seconds for the oracle and the auto fallback.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = 0.2)]
    p_min: f64,
    #[arg(long, default_value_t = 0.8)]
    p_max: f64,
    #[arg(long)]
    planted: Option<usize>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

struct Instance {
    id: String,
    class: String,
    graph: Graph,
}

#[derive(Debug, Clone, Serialize)]
struct Record {
    instance_id: String,
    class: String,
    n: usize,
    m: usize,
    d: usize,
    algo: String,
    decision: String,
    oracle_decision: String,
    agree: Option<bool>,
    solver_ms: u128,
    oracle_ms: u128,
    graph6: String,
    solver_detail: String,
}

/// The CSV columns, in order.
#[derive(Serialize)]
struct CsvRow<'a> {
    instance_id: &'a str,
    class: &'a str,
    n: usize,
    m: usize,
    d: usize,
    algo: &'a str,
    decision: &'a str,
    oracle_decision: &'a str,
    agree: &'a str,
    solver_ms: u128,
    oracle_ms: u128,
}

#[derive(Debug, Default, Serialize)]
struct Summary {
    instances: usize,
    agreements: usize,
    mismatches: usize,
    timeouts: usize,
    errors: usize,
    failed: bool,
}

fn instances(args: &CrosscheckArgs) -> Result<(Vec<Instance>, Vec<String>), String> {
    let mut warnings = Vec::new();
    let in_range = |g: &Graph| (args.n_min..=args.n_max).contains(&g.n());
    let list = match (&args.corpus, args.class) {
        (Some(path), class) => {
            let label = class.map_or("corpus".to_string(), |c| c.to_string());
            input::read_graph6_lines(path)?
                .into_iter()
                .filter(|(_, g)| in_range(g) && class.is_none_or(|c| c.contains(g)))
                .map(|(line, graph)| Instance { id: format!("corpus-{line:07}"), class: label.clone(), graph })
                .collect()
        }
        (None, Some(class)) => {
            let seed = args.seed.ok_or("random campaigns need --seed")?;
            let mut out = Vec::new();
            for n in args.n_min..=args.n_max {
                let cfg = GenConfig {
                    class,
                    n,
                    count: args.trials,
                    seed: seed.wrapping_add(n as u64 * 1_000_003),
                    p_range: (args.p_min, args.p_max),
                    planted_clique: args.planted,
                    tries_per_graph: 2000,
                };
                match generate(&cfg) {
                    Ok(got) => {
                        out.extend(got.graphs.into_iter().enumerate().map(|(k, graph)| Instance {
                            id: format!("{class}-n{n:02}-{k:05}"),
                            class: class.to_string(),
                            graph,
                        }));
                    }
                    Err(e) => warnings.push(format!("n = {n}: {e}")),
                }
            }
            out
        }
        (None, None) => return Err("give --corpus, --class, or both".into()),
    };
    if list.is_empty() {
        warnings.push("no instances to check".into());
    }
    Ok((list, warnings))
}

fn decision_of(r: &Result<bool, String>) -> String {
    match r {
        Ok(true) => "yes".into(),
        Ok(false) => "no".into(),
        Err(e) if e == "timeout" => "timeout".into(),
        Err(_) => "error".into(),
    }
}

fn check_one(inst: &Instance, d: usize, args: &CrosscheckArgs, guard: Option<usize>) -> Record {
    let timeout = Duration::from_secs_f64(args.timeout);
    let g = &inst.graph;

    let started = Instant::now();
    let solved = catch_unwind(AssertUnwindSafe(|| run_algo(g, d, args.algo, guard, Some(timeout))));
    let solver_ms = started.elapsed().as_millis();
    let (solver, detail) = match solved {
        Ok(Ok(out)) => (Ok(out.is_yes()), out.algorithm),
        Ok(Err(SolveError::TimedOut)) => (Err("timeout".to_string()), "timed out".into()),
        Ok(Err(e)) => (Err(e.to_string()), e.to_string()),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (Err(msg.clone()), format!("panic: {msg}"))
        }
    };

    let started = Instant::now();
    let oc = OracleConfig { guard, deadline: Some(started + timeout) };
    let oracle = match oracle_solve_with(g, d, None, &oc) {
        Ok(OracleOutcome::Found(_)) => Ok(true),
        Ok(OracleOutcome::NoCut) => Ok(false),
        Ok(OracleOutcome::TimedOut) => Err("timeout".to_string()),
        Err(e) => Err(e.to_string()),
    };
    let oracle_ms = started.elapsed().as_millis();

    let agree = match (&solver, &oracle) {
        (Ok(a), Ok(b)) => Some(a == b),
        (Err(e), _) | (_, Err(e)) if e == "timeout" => None,
        _ => Some(false),
    };
    Record {
        instance_id: format!("{}-d{d}", inst.id),
        class: inst.class.clone(),
        n: g.n(),
        m: g.m(),
        d,
        algo: args.algo.name().into(),
        decision: decision_of(&solver),
        oracle_decision: decision_of(&oracle),
        agree,
        solver_ms,
        oracle_ms,
        graph6: emit_graph6(g),
        solver_detail: detail,
    }
}

pub fn run(args: &CrosscheckArgs, guard: Option<usize>) -> CmdResult {
    if let Some(limit) = guard {
        if args.n_max > limit {
            return Err(format!("--n-max {} exceeds the oracle guard {limit}; raise DCUT_ORACLE_GUARD", args.n_max));
        }
    }
    let (list, warnings) = instances(args)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let jobs: Vec<(&Instance, usize)> = list.iter().flat_map(|i| args.d.iter().map(move |&d| (i, d))).collect();
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(args.jobs.unwrap_or(0)).build().map_err(|e| e.to_string())?;
    let mut records: Vec<Record> =
        pool.install(|| jobs.par_iter().map(|&(i, d)| check_one(i, d, args, guard)).collect());
    records.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));

    let mut summary = Summary { instances: records.len(), ..Summary::default() };
    for r in &records {
        match r.agree {
            Some(true) => summary.agreements += 1,
            Some(false) => summary.mismatches += 1,
            None => summary.timeouts += 1,
        }
        if r.decision == "error" || r.oracle_decision == "error" {
            summary.errors += 1;
        }
    }
    summary.failed = summary.mismatches > 0;

    for r in records.iter().filter(|r| r.agree == Some(false)) {
        eprintln!(
            "MISMATCH {} {} d={}: {} says {}, oracle says {} ({})",
            r.instance_id, r.graph6, r.d, r.algo, r.decision, r.oracle_decision, r.solver_detail
        );
    }
    println!(
        "{} instances: {} agree, {} mismatches, {} timeouts, {} errors",
        summary.instances, summary.agreements, summary.mismatches, summary.timeouts, summary.errors
    );

    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &records {
            let agree = r.agree.map_or(String::new(), |a| a.to_string());
            w.serialize(CsvRow {
                instance_id: &r.instance_id,
                class: &r.class,
                n: r.n,
                m: r.m,
                d: r.d,
                algo: &r.algo,
                decision: &r.decision,
                oracle_decision: &r.oracle_decision,
                agree: &agree,
                solver_ms: r.solver_ms,
                oracle_ms: r.oracle_ms,
            })
            .map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        write(path, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    }
    if let Some(path) = &args.json {
        let report = serde_json::json!({
            "version": env!("CARGO_PKG_VERSION"),
            "seed": args.seed,
            "oracle_guard": guard,
            "config": args,
            "summary": summary,
            "warnings": warnings,
            "records": records,
        });
        write(path, &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    }
    Ok(if summary.failed {
        NO
    } else if summary.errors > 0 {
        ERROR
    } else {
        YES
    })
}
