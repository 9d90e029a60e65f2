//! Lifting a solver for H-free graphs to (H+P1)-free graphs: an induced
//! copy of H in an (H+P1)-free graph dominates it.

use super::{require_connected, require_d, Ctx, SolveError, SolveOutcome};
use crate::colouring::{solve_with_dominating_set, Rules};
use crate::graph::{find_induced, vertex_set, Graph, PatternId};

pub fn solve_h_plus_p1(
    g: &Graph,
    h: &PatternId,
    d: usize,
    inner: &dyn Fn(&Graph, usize) -> Result<SolveOutcome, SolveError>,
) -> Result<SolveOutcome, SolveError> {
    require_d(d, 1)?;
    require_connected(g)?;
    let Some(copy) = find_induced(g, h) else {
        return inner(g, d);
    };
    let u = vertex_set(g.n(), copy.iter().copied());
    if !g.dominates(&u) {
        return Err(SolveError::NotHPlusP1Free { pattern: h.to_string(), witness: copy });
    }
    let ctx = Ctx::new(g, d, Rules::BUDGET);
    ctx.branch("hplus:copy");
    let cert = solve_with_dominating_set(g, &u, d)?;
    Ok(ctx.finish(cert, &format!("{h}+P1/dominating-set")))
}
