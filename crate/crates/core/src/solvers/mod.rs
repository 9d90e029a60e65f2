//! Class-specific d-Cut solvers and the dispatcher that routes to them.

mod auto;
mod diameter2;
mod hplus;
mod p3p4free;
mod p5free;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::colouring::{
    extend_budgeted, propagate, ColouringError, DCutCertificate, Extensions, PartialColouring, Rules, Tally,
};
use crate::graph::{Dist, Graph, GraphError, PatternId, Vertex, VertexSet};

pub use auto::{solve_auto, solve_auto_with, solve_dominating_set, solve_oracle, AutoConfig};
pub use diameter2::{solve_diameter2, solve_diameter2_with};
pub use hplus::solve_h_plus_p1;
pub use p3p4free::{solve_p3p4_free, solve_p3p4_free_with};
pub use p5free::{solve_p5_free, solve_p5_free_with};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("input graph has diameter {0}, not at most 2")]
    DiameterTooLarge(Dist),
    #[error("input graph is not P5-free: induced P5 on {witness:?}")]
    NotP5Free { witness: Vec<Vertex> },
    #[error("input graph is not (P3+P4)-free: induced P3+P4 on {witness:?}")]
    NotP3P4Free { witness: Vec<Vertex> },
    #[error("input graph is not ({pattern}+P1)-free: induced {pattern} on {witness:?} does not dominate")]
    NotHPlusP1Free { pattern: String, witness: Vec<Vertex> },
    #[error("this algorithm needs d >= {min}, got d = {d}")]
    DTooSmall { d: usize, min: usize },
    #[error("no algorithm applies to this {class} graph on {n} vertices within the configured guards")]
    Unsupported { class: String, n: usize },
    #[error("search timed out")]
    TimedOut,
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub branches_by_phase: BTreeMap<String, u64>,
    pub propagation_calls: u64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub decision: Decision,
    pub certificate: Option<DCutCertificate>,
    pub stats: SolveStats,
    pub algorithm: String,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }
}

/// Knobs for the branching solvers. Turning a rule off must never change
/// a decision, only the amount of search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Discard states where a coloured vertex is already over budget.
    pub budget_pruning: bool,
    /// Saturated vertices keep their remaining neighbours on their side.
    /// The (P3+P4)-free solver's structural checks rely on it and are
    /// skipped when it is off.
    pub saturation: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget_pruning: true, saturation: true }
    }
}

/// Shared per-run state: graph, d, counters and options.
pub(crate) struct Ctx<'a> {
    pub g: &'a Graph,
    pub d: usize,
    pub tally: Tally,
    pub rules: Rules,
    started: Instant,
}

impl<'a> Ctx<'a> {
    pub fn new(g: &'a Graph, d: usize, rules: Rules) -> Self {
        Ctx { g, d, tally: Tally::default(), rules, started: Instant::now() }
    }

    pub fn settle(&self, pc: &PartialColouring) -> Option<PartialColouring> {
        propagate(self.g, pc, self.d, self.rules, Some(&self.tally)).ok()
    }

    pub fn extend(&self, pc: &PartialColouring, frontier: &VertexSet, phase: &'static str) -> Extensions<'_> {
        extend_budgeted(self.g, pc, frontier, self.d).rules(self.rules).tally(&self.tally, phase)
    }

    pub fn branch(&self, phase: &'static str) {
        self.tally.branch(phase);
    }

    /// The certificate of a complete, valid colouring.
    pub fn accept(&self, pc: &PartialColouring) -> Option<DCutCertificate> {
        pc.certificate(self.g, self.d)
    }

    fn stats(&self) -> SolveStats {
        SolveStats {
            branches_by_phase: self.tally.branches(),
            propagation_calls: self.tally.propagations(),
            wall_time_ms: self.started.elapsed().as_millis() as u64,
        }
    }

    /// Package a result; certificates are checked here, on every path.
    pub fn finish(&self, cert: Option<DCutCertificate>, algorithm: &str) -> SolveOutcome {
        if let Some(c) = &cert {
            c.assert_valid(self.g, self.d);
        }
        SolveOutcome {
            decision: if cert.is_some() { Decision::Yes } else { Decision::No },
            certificate: cert,
            stats: self.stats(),
            algorithm: algorithm.to_string(),
        }
    }
}

pub(crate) fn rules_for(opts: SolveOptions) -> Rules {
    Rules { budget: opts.budget_pruning, saturation: opts.saturation }
}

pub(crate) fn require_connected(g: &Graph) -> Result<(), SolveError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(SolveError::Disconnected)
    }
}

pub(crate) fn require_d(d: usize, min: usize) -> Result<(), SolveError> {
    if d >= min {
        Ok(())
    } else {
        Err(SolveError::DTooSmall { d, min })
    }
}

/// `pc` with every vertex of `set` given colour `c`, or `None` if one of
/// them already has the other colour.
pub(crate) fn with_colour(
    pc: &PartialColouring,
    set: &VertexSet,
    c: crate::colouring::Colour,
) -> Option<PartialColouring> {
    if set.ones().any(|v| pc.colour(v) == Some(c.opposite())) {
        return None;
    }
    let mut out = pc.clone();
    out.set_all(set, c);
    Some(out)
}

/// The pattern these solvers look for in recognition errors.
pub(crate) fn pattern_witness(g: &Graph, p: &PatternId) -> Option<Vec<Vertex>> {
    crate::graph::find_induced(g, p)
}
