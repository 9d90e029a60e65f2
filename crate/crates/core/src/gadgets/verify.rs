//! Run both sides of a reduction on one instance and compare.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::line::{line_image, witness_edge_colouring};
use super::threep2::{assignment_from_cut, witness_colouring_3p2};
use super::{
    build_3p2_gadget, build_line_gadget, sat_oracle_with, ClassCheck, CnfInstance, GadgetError, GadgetKind,
    GadgetOutput, SAT_GUARD,
};
use crate::colouring::{
    oracle_solve_with, validate_colouring, validate_edge_colouring, ColouringError, DCutCertificate, OracleConfig,
    OracleOutcome,
};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Deadline for the d-cut oracle, measured from its start.
    pub timeout: Option<Duration>,
    pub oracle_guard: Option<usize>,
    pub sat_guard: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { timeout: None, oracle_guard: None, sat_guard: SAT_GUARD }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DcutDecision {
    Yes,
    No,
    TimedOut,
    /// The oracle guard refused the gadget.
    Skipped,
}

impl fmt::Display for DcutDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DcutDecision::Yes => "yes",
            DcutDecision::No => "no",
            DcutDecision::TimedOut => "timed-out",
            DcutDecision::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AgreementReport {
    pub kind: GadgetKind,
    pub d: usize,
    pub n_vars: usize,
    pub gadget_n: usize,
    pub gadget_m: usize,
    /// `None` when the instance is over the SAT guard.
    pub sat: Option<bool>,
    pub dcut: DcutDecision,
    /// Set only when both decisions are exact.
    pub agree: Option<bool>,
    /// The colouring built from the satisfying assignment is valid.
    pub forward_witness_valid: Option<bool>,
    /// The assignment read off the d-cut satisfies the instance.
    pub backward_assignment_valid: Option<bool>,
    pub dcut_ms: u128,
    /// Only for the 3P2 gadget.
    pub class_check: Option<ClassCheck>,
}

pub fn verify_reduction(
    inst: &CnfInstance,
    d: usize,
    kind: GadgetKind,
    cfg: &VerifyConfig,
) -> Result<AgreementReport, GadgetError> {
    let out = match kind {
        GadgetKind::LineGadget => build_line_gadget(inst, d)?,
        GadgetKind::ThreeP2Gadget => build_3p2_gadget(inst, d)?,
    };
    let assignment = sat_oracle_with(inst, cfg.sat_guard).ok();
    let forward_witness_valid = match &assignment {
        Some(Some(a)) => Some(forward_valid(&out, inst, a)?),
        _ => None,
    };

    let start = Instant::now();
    let oc = OracleConfig { guard: cfg.oracle_guard, deadline: cfg.timeout.map(|t| start + t) };
    let (dcut, cert) = match oracle_solve_with(&out.graph, d, None, &oc) {
        Ok(OracleOutcome::Found(cert)) => (DcutDecision::Yes, Some(cert)),
        Ok(OracleOutcome::NoCut) => (DcutDecision::No, None),
        Ok(OracleOutcome::TimedOut) => (DcutDecision::TimedOut, None),
        Err(ColouringError::GuardExceeded { .. }) => (DcutDecision::Skipped, None),
        Err(e) => panic!("oracle failed on a gadget: {e}"),
    };
    let dcut_ms = start.elapsed().as_millis();
    let backward_assignment_valid = match &cert {
        Some(cert) => Some(inst.satisfied_by(&assignment_from(&out, cert))?),
        None => None,
    };
    let sat = assignment.map(|a| a.is_some());
    let agree = match (sat, dcut) {
        (Some(s), DcutDecision::Yes | DcutDecision::No) => Some(s == (dcut == DcutDecision::Yes)),
        _ => None,
    };
    Ok(AgreementReport {
        kind,
        d,
        n_vars: inst.n_vars,
        gadget_n: out.graph.n(),
        gadget_m: out.graph.m(),
        sat,
        dcut,
        agree,
        forward_witness_valid,
        backward_assignment_valid,
        dcut_ms,
        class_check: (kind == GadgetKind::ThreeP2Gadget).then(|| ClassCheck::of(&out.graph)),
    })
}

fn forward_valid(out: &GadgetOutput, inst: &CnfInstance, a: &[bool]) -> Result<bool, GadgetError> {
    let d = out.d;
    Ok(match out.kind {
        GadgetKind::ThreeP2Gadget => {
            let (red, blue) = witness_colouring_3p2(out, inst, a)?;
            validate_colouring(&out.graph, &red, &blue, d).is_ok_and(|v| v.is_empty())
        }
        GadgetKind::LineGadget => {
            let ec = witness_edge_colouring(out, inst, a)?;
            let pre = out.pre_line.as_ref().expect("line gadget keeps its pre-line graph");
            let (red, blue) = line_image(out, &ec);
            validate_edge_colouring(&pre.graph, &ec, d).is_empty()
                && validate_colouring(&out.graph, &red, &blue, d).is_ok_and(|v| v.is_empty())
        }
    })
}

fn assignment_from(out: &GadgetOutput, cert: &DCutCertificate) -> Vec<bool> {
    match out.kind {
        GadgetKind::ThreeP2Gadget => assignment_from_cut(out, cert),
        GadgetKind::LineGadget => {
            // x is true when the edges of V_x have the colour of the edges of S
            let pre = out.pre_line.as_ref().expect("line gadget keeps its pre-line graph");
            let red = cert.red_set(out.graph.n());
            let edge_red = |clique: usize| {
                let vs = &pre.cliques[clique].vertices;
                let e = (vs[0].min(vs[1]), vs[0].max(vs[1]));
                red.contains(pre.edges.binary_search(&e).expect("clique edge"))
            };
            let s = edge_red(0);
            (0..(pre.cliques.len() - 2) / 2).map(|h| edge_red(2 + 2 * h) == s).collect()
        }
    }
}
