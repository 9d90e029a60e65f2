mod crosscheck;
mod input;
mod reduce;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use dcut::colouring::{DCutCertificate, OracleConfig, DEFAULT_GUARD};
use dcut::generate::{generate, GenConfig, GraphClass};
use dcut::graph::{diameter, emit_graph6, find_induced, line_graph, min_dominating_set, radius, Graph, PatternId};
use dcut::solvers::{
    solve_auto_with, solve_diameter2, solve_dominating_set, solve_oracle, solve_p3p4_free, solve_p5_free, AutoConfig,
    SolveError, SolveOutcome,
};

/// Exit statuses: 0 yes/success, 1 no/validation failure, 2 usage or class error.
pub const YES: u8 = 0;
pub const NO: u8 = 1;
pub const ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "dcut", version, about = "d-Cut solvers, validators and hardness gadgets")]
struct Cli {
    /// Largest graph the exhaustive oracle accepts; 0 disables the guard.
    #[arg(long, global = true, env = "DCUT_ORACLE_GUARD")]
    oracle_guard: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Auto,
    Oracle,
    Diam2,
    P5free,
    P3p4free,
    Domset,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Oracle => "oracle",
            Algo::Diam2 => "diam2",
            Algo::P5free => "p5free",
            Algo::P3p4free => "p3p4free",
            Algo::Domset => "domset",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a graph has a d-cut.
    Solve {
        /// graph6 or edge-list file
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "auto")]
        algo: Algo,
        /// Where to write the certificate on YES.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Print search statistics as JSON.
        #[arg(long)]
        stats: bool,
    },
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Report connectivity, distances and forbidden induced subgraphs.
    Recognize {
        input: PathBuf,
        /// Largest dominating set size searched for.
        #[arg(long, default_value_t = 8)]
        dom_cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build a hardness gadget from a CNF file.
    Reduce(reduce::ReduceArgs),
    /// Random connected members of a class, as graph6 lines.
    Gen {
        #[arg(value_parser = parse_class)]
        class: GraphClass,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        p_min: f64,
        #[arg(long, default_value_t = 0.8)]
        p_max: f64,
        /// Plant a clique on this many vertices first.
        #[arg(long)]
        planted: Option<usize>,
        #[arg(long, default_value_t = 2000)]
        tries_per_graph: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Line graph of the input, as graph6.
    Linegraph {
        input: PathBuf,
        /// Write the vertex-to-edge map here as JSON.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Run a solver and the oracle side by side over many graphs.
    Crosscheck(crosscheck::CrosscheckArgs),
}

pub fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse()
}

/// The guard in effect: flag or environment, else the library default.
pub fn guard(flag: Option<usize>) -> Option<usize> {
    match flag {
        Some(0) => None,
        Some(g) => Some(g),
        None => Some(DEFAULT_GUARD),
    }
}

pub fn run_algo(
    g: &Graph,
    d: usize,
    algo: Algo,
    guard: Option<usize>,
    timeout: Option<Duration>,
) -> Result<SolveOutcome, SolveError> {
    let deadline = timeout.map(|t| Instant::now() + t);
    match algo {
        Algo::Auto => {
            let cfg = AutoConfig { oracle_guard: guard, deadline, ..AutoConfig::default() };
            solve_auto_with(g, d, &cfg)
        }
        Algo::Oracle => solve_oracle(g, d, &OracleConfig { guard, deadline }),
        Algo::Diam2 => solve_diameter2(g, d),
        Algo::P5free => solve_p5_free(g, d),
        Algo::P3p4free => solve_p3p4_free(g, d),
        Algo::Domset => solve_dominating_set(g, d, AutoConfig::default().domination_nodes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guard = guard(cli.oracle_guard);
    let code = match cli.cmd {
        Cmd::Solve { input, d, algo, witness, stats } => cmd_solve(&input, d, algo, witness, stats, guard),
        Cmd::Verify { graph, certificate } => cmd_verify(&graph, &certificate),
        Cmd::Recognize { input, dom_cap, json } => cmd_recognize(&input, dom_cap, json),
        Cmd::Reduce(args) => reduce::run(&args),
        Cmd::Gen { class, n, count, seed, p_min, p_max, planted, tries_per_graph, out } => {
            let cfg =
                GenConfig { class, n, count, seed, p_range: (p_min, p_max), planted_clique: planted, tries_per_graph };
            cmd_gen(&cfg, out)
        }
        Cmd::Linegraph { input, map } => cmd_linegraph(&input, map),
        Cmd::Crosscheck(args) => crosscheck::run(&args, guard),
    };
    ExitCode::from(code.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ERROR
    }))
}

type CmdResult = Result<u8, String>;

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_solve(
    input: &Path,
    d: usize,
    algo: Algo,
    witness: Option<PathBuf>,
    stats: bool,
    guard: Option<usize>,
) -> CmdResult {
    let g = input::read_graph(input)?;
    let out = run_algo(&g, d, algo, guard, None).map_err(|e| e.to_string())?;
    println!("{} ({})", out.decision, out.algorithm);
    if stats {
        println!("{}", serde_json::to_string(&out.stats).expect("stats serialize"));
    }
    match (&out.certificate, witness) {
        (Some(cert), Some(path)) => write(&path, &serde_json::to_string_pretty(cert).expect("certificate serializes"))?,
        (Some(cert), None) => println!("red: {:?}\nblue: {:?}", cert.red, cert.blue),
        _ => {}
    }
    Ok(if out.is_yes() { YES } else { NO })
}

fn cmd_verify(graph: &Path, certificate: &Path) -> CmdResult {
    let g = input::read_graph(graph)?;
    let text = fs::read_to_string(certificate).map_err(|e| format!("cannot read {}: {e}", certificate.display()))?;
    let cert: DCutCertificate = serde_json::from_str(&text).map_err(|e| format!("bad certificate: {e}"))?;
    let issues = cert.check(&g);
    if issues.is_empty() {
        println!("valid {}-cut", cert.d);
        return Ok(YES);
    }
    for issue in &issues {
        println!("{issue}");
    }
    Ok(NO)
}

const RECOGNISED: [&str; 11] = ["P5", "P6", "P7", "P3+P4", "K1,3", "3P2", "C3", "C4", "C5", "C6", "C7"];

fn cmd_recognize(input: &Path, dom_cap: usize, json: bool) -> CmdResult {
    let g = input::read_graph(input)?;
    let mut free = serde_json::Map::new();
    for name in RECOGNISED {
        let p: PatternId = name.parse().map_err(|e| format!("{e}"))?;
        free.insert(name.to_string(), serde_json::Value::Bool(find_induced(&g, &p).is_none()));
    }
    let dom = min_dominating_set(&g, dom_cap).map(|s| s.count_ones(..));
    let (diam, rad) = (diameter(&g), radius(&g));
    if json {
        let report = serde_json::json!({
            "n": g.n(),
            "m": g.m(),
            "connected": g.is_connected(),
            "diameter": diam,
            "radius": rad,
            "free": free,
            "domination_number": dom,
            "domination_cap": dom_cap,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(YES);
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    println!("n: {}, m: {}", g.n(), g.m());
    println!("connected: {}", yn(g.is_connected()));
    println!("diameter: {diam}");
    println!("radius: {rad}");
    for (name, v) in &free {
        let label = if name == "K1,3" { "claw-free (K1,3)".to_string() } else { format!("{name}-free") };
        println!("{label}: {}", yn(v.as_bool().unwrap_or(false)));
    }
    match dom {
        Some(k) => println!("domination number: {k}"),
        None => println!("domination number: > {dom_cap}"),
    }
    Ok(YES)
}

fn cmd_gen(cfg: &GenConfig, out: Option<PathBuf>) -> CmdResult {
    let got = generate(cfg).map_err(|e| e.to_string())?;
    eprintln!(
        "{} {} graphs on {} vertices from {} candidates (acceptance rate {:.4})",
        got.graphs.len(),
        cfg.class,
        cfg.n,
        got.candidates,
        got.acceptance_rate()
    );
    let text: String = got.graphs.iter().map(|g| emit_graph6(g) + "\n").collect();
    match out {
        Some(path) => write(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(YES)
}

fn cmd_linegraph(input: &Path, map: Option<PathBuf>) -> CmdResult {
    let g = input::read_graph(input)?;
    let (l, edges) = line_graph(&g);
    println!("{}", emit_graph6(&l));
    if let Some(path) = map {
        write(&path, &serde_json::to_string(&edges).expect("edges serialize"))?;
    }
    Ok(YES)
}
