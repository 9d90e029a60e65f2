use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use dcut::colouring::{validate_colouring, validate_edge_colouring};
use dcut::gadgets::{
    build_3p2_gadget, build_line_gadget, line_image, parse_dimacs, sat_oracle, validate_instance,
    witness_colouring_3p2, witness_edge_colouring, ClassCheck, CnfInstance, GadgetError, GadgetOutput,
};
use dcut::graph::emit_graph6;
use serde_json::json;

use crate::{write, CmdResult, ERROR, NO, YES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReduceKind {
    NaeLine,
    #[value(name = "3p2")]
    ThreeP2,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    kind: ReduceKind,
    /// DIMACS CNF file.
    cnf: PathBuf,
    #[arg(long)]
    d: usize,
    /// Output prefix: writes PREFIX.g6 and PREFIX.roles.json (plus
    /// PREFIX.pre.g6 and PREFIX.pre.roles.json for the line gadget).
    #[arg(long)]
    out: PathBuf,
    /// Truth values such as "TTF" or "1,1,0", or "auto" to take the first
    /// satisfying assignment. Writes PREFIX.witness.json and validates it.
    #[arg(long)]
    witness_assignment: Option<String>,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    s.into()
}

fn parse_assignment(text: &str, n: usize) -> Result<Vec<bool>, String> {
    let a: Vec<bool> = text
        .chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            'T' | 't' | '1' => Ok(true),
            'F' | 'f' | '0' => Ok(false),
            other => Err(format!("bad truth value {other:?}")),
        })
        .collect::<Result<_, _>>()?;
    if a.len() != n {
        return Err(format!("assignment has {} values for {n} variables", a.len()));
    }
    Ok(a)
}

pub fn run(args: &ReduceArgs) -> CmdResult {
    let text = fs::read_to_string(&args.cnf).map_err(|e| format!("cannot read {}: {e}", args.cnf.display()))?;
    let inst = parse_dimacs(&text).map_err(|e| e.to_string())?;
    let violations = validate_instance(&inst);
    if !violations.is_empty() {
        eprintln!("instance violates its restrictions:");
        for v in &violations {
            eprintln!("  {v}");
        }
        return Ok(ERROR);
    }
    let built = match args.kind {
        ReduceKind::NaeLine => build_line_gadget(&inst, args.d),
        ReduceKind::ThreeP2 => build_3p2_gadget(&inst, args.d),
    };
    let out = built.map_err(|e| e.to_string())?;

    write(&with_suffix(&args.out, ".g6"), &(emit_graph6(&out.graph) + "\n"))?;
    write(&with_suffix(&args.out, ".roles.json"), &out.role_map_json())?;
    println!("gadget: {} vertices, {} edges", out.graph.n(), out.graph.m());
    if let Some(pre) = &out.pre_line {
        write(&with_suffix(&args.out, ".pre.g6"), &(emit_graph6(&pre.graph) + "\n"))?;
        let roles = serde_json::to_string_pretty(&pre.roles).expect("roles serialize");
        write(&with_suffix(&args.out, ".pre.roles.json"), &roles)?;
        println!("pre-line graph: {} vertices, {} edges", pre.graph.n(), pre.graph.m());
    } else {
        let check = ClassCheck::of(&out.graph);
        println!(
            "3P2-free: {}, radius: {}, diameter: {}",
            if check.three_p2.is_none() { "yes" } else { "no" },
            check.radius,
            check.diameter
        );
    }

    let Some(spec) = &args.witness_assignment else {
        return Ok(YES);
    };
    let a = if spec == "auto" {
        match sat_oracle(&inst).map_err(|e| e.to_string())? {
            Some(a) => a,
            None => {
                println!("instance is unsatisfiable; no witness");
                return Ok(NO);
            }
        }
    } else {
        parse_assignment(spec, inst.n_vars)?
    };
    match witness(&out, &inst, &a) {
        Ok((report, valid)) => {
            write(
                &with_suffix(&args.out, ".witness.json"),
                &serde_json::to_string_pretty(&report).expect("witness serializes"),
            )?;
            println!("witness: {}", if valid { "valid" } else { "INVALID" });
            Ok(if valid { YES } else { NO })
        }
        Err(GadgetError::NotSatisfying) => {
            println!("assignment does not satisfy the instance");
            Ok(NO)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn witness(out: &GadgetOutput, inst: &CnfInstance, a: &[bool]) -> Result<(serde_json::Value, bool), GadgetError> {
    let d = out.d;
    match &out.pre_line {
        None => {
            let (red, blue) = witness_colouring_3p2(out, inst, a)?;
            let v = validate_colouring(&out.graph, &red, &blue, d).expect("witness is a partition");
            let report = json!({
                "assignment": a,
                "red": red.ones().collect::<Vec<_>>(),
                "blue": blue.ones().collect::<Vec<_>>(),
                "violations": v.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok((report, v.is_empty()))
        }
        Some(pre) => {
            let ec = witness_edge_colouring(out, inst, a)?;
            let edge_issues = validate_edge_colouring(&pre.graph, &ec, d);
            let (red, blue) = line_image(out, &ec);
            let line_issues = validate_colouring(&out.graph, &red, &blue, d).expect("image is a partition");
            let valid = edge_issues.is_empty() && line_issues.is_empty();
            let report = json!({
                "assignment": a,
                "edge_colouring": ec,
                "line_red": red.ones().collect::<Vec<_>>(),
                "line_blue": blue.ones().collect::<Vec<_>>(),
                "edge_violations": edge_issues.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "line_violations": line_issues.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok((report, valid))
        }
    }
}
