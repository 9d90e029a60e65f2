//! Recognise which algorithm applies and run it.

use std::time::Instant;

use super::{
    diameter2::solve_diameter2_with, p3p4free::solve_p3p4_free_with, p5free::solve_p5_free_with, require_connected,
    solve_h_plus_p1, Ctx, SolveError, SolveOptions, SolveOutcome,
};
use crate::colouring::{
    oracle_solve_with, solve_with_dominating_set, ColouringError, OracleConfig, OracleOutcome, Rules, DEFAULT_GUARD,
};
use crate::graph::{
    diameter, find_induced, greedy_dominating_set, min_dominating_set_budgeted, DomSearch, Graph, PatternId,
};

#[derive(Debug, Clone)]
pub struct AutoConfig {
    /// Largest graph handed to the exhaustive oracle; `None` for no limit.
    pub oracle_guard: Option<usize>,
    /// Search nodes allowed when looking for a dominating set of size <= 3d.
    pub domination_nodes: u64,
    pub options: SolveOptions,
    /// Only the oracle fallback honours this.
    pub deadline: Option<Instant>,
}

impl Default for AutoConfig {
    fn default() -> Self {
        AutoConfig {
            oracle_guard: Some(DEFAULT_GUARD),
            domination_nodes: 200_000,
            options: SolveOptions::default(),
            deadline: None,
        }
    }
}

pub fn solve_auto(g: &Graph, d: usize) -> Result<SolveOutcome, SolveError> {
    solve_auto_with(g, d, &AutoConfig::default())
}

pub fn solve_auto_with(g: &Graph, d: usize, cfg: &AutoConfig) -> Result<SolveOutcome, SolveError> {
    if d == 0 {
        return Err(ColouringError::ZeroD.into());
    }
    require_connected(g)?;
    match solve_dominating_set(g, d, cfg.domination_nodes) {
        Err(SolveError::Unsupported { .. }) => {}
        done => return done,
    }

    let p5 = PatternId::path(5);
    if d >= 2 {
        let opts = cfg.options;
        if diameter(g).is_at_most(2) {
            return solve_diameter2_with(g, d, opts);
        }
        if find_induced(g, &p5).is_none() {
            return solve_p5_free_with(g, d, opts);
        }
        if find_induced(g, &PatternId::p3_plus_p4()).is_none() {
            return solve_p3p4_free_with(g, d, opts);
        }
        let p5_inner = |h: &Graph, d: usize| solve_p5_free_with(h, d, opts);
        if find_induced(g, &p5.plus_isolated(1)).is_none() {
            return solve_h_plus_p1(g, &p5, d, &p5_inner);
        }
        if find_induced(g, &p5.plus_isolated(2)).is_none() {
            let once = |h: &Graph, d: usize| solve_h_plus_p1(h, &p5, d, &p5_inner);
            return solve_h_plus_p1(g, &p5.plus_isolated(1), d, &once);
        }
    }

    let class =
        if d == 1 { "d = 1".to_string() } else { "non-(P5+2P1)-free, non-(P3+P4)-free, diameter > 2".to_string() };
    let oc = OracleConfig { guard: cfg.oracle_guard, deadline: cfg.deadline };
    match solve_oracle(g, d, &oc) {
        Err(SolveError::Colouring(ColouringError::GuardExceeded { .. })) => {
            Err(SolveError::Unsupported { class, n: g.n() })
        }
        other => other,
    }
}

/// The exhaustive oracle wrapped as a solver.
pub fn solve_oracle(g: &Graph, d: usize, oc: &OracleConfig) -> Result<SolveOutcome, SolveError> {
    let ctx = Ctx::new(g, d, Rules::BUDGET);
    match oracle_solve_with(g, d, None, oc)? {
        OracleOutcome::Found(cert) => Ok(ctx.finish(Some(cert), "oracle")),
        OracleOutcome::NoCut => Ok(ctx.finish(None, "oracle")),
        OracleOutcome::TimedOut => Err(SolveError::TimedOut),
    }
}

/// Branch over a dominating set of size at most 3d: the greedy one if it is
/// small enough, otherwise an exact search limited to `max_nodes` nodes.
/// `Unsupported` when neither finds one.
pub fn solve_dominating_set(g: &Graph, d: usize, max_nodes: u64) -> Result<SolveOutcome, SolveError> {
    if d == 0 {
        return Err(ColouringError::ZeroD.into());
    }
    let greedy = greedy_dominating_set(g);
    let dom = if greedy.count_ones(..) <= 3 * d {
        greedy
    } else {
        match min_dominating_set_budgeted(g, 3 * d, max_nodes) {
            DomSearch::Found(s) => s,
            DomSearch::Exhausted => {
                return Err(SolveError::Unsupported { class: format!("domination number > {}", 3 * d), n: g.n() })
            }
            DomSearch::GaveUp => {
                return Err(SolveError::Unsupported {
                    class: format!("no dominating set of size <= {} found in {max_nodes} nodes", 3 * d),
                    n: g.n(),
                })
            }
        }
    };
    let ctx = Ctx::new(g, d, Rules::BUDGET);
    ctx.branch("auto:dominating-set");
    let cert = solve_with_dominating_set(g, &dom, d)?;
    Ok(ctx.finish(cert, "dominating-set"))
}
