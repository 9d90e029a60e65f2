//! d-Cut on P5-free graphs.
//!
//! A dominating clique or C5 `D` either is small (dominating-set solver) or
//! is a big clique we may colour blue. The blue phase then walks down a
//! chain of components `L_1 ⊇ L_2 ⊇ ...`, each with its own dominating
//! structure `D_h`, and at every level tries to put the first red vertex in
//! `D_h` (the red phase).

use super::{
    pattern_witness, require_connected, require_d, rules_for, with_colour, Ctx, SolveError, SolveOptions, SolveOutcome,
};
use crate::colouring::{solve_with_dominating_set, Colour, DCutCertificate, PartialColouring};
use crate::graph::{components_within, find_dominating_clique_or_c5, full_set, Graph, PatternId, VertexSet};

pub const NAME: &str = "p5-free";

pub fn solve_p5_free(g: &Graph, d: usize) -> Result<SolveOutcome, SolveError> {
    solve_p5_free_with(g, d, SolveOptions::default())
}

pub fn solve_p5_free_with(g: &Graph, d: usize, opts: SolveOptions) -> Result<SolveOutcome, SolveError> {
    require_d(d, 2)?;
    require_connected(g)?;
    if let Some(witness) = pattern_witness(g, &PatternId::path(5)) {
        return Err(SolveError::NotP5Free { witness });
    }
    let ctx = Ctx::new(g, d, rules_for(opts));
    if g.n() == 0 {
        return Ok(ctx.finish(None, NAME));
    }
    let dom = dominating_structure(g, &full_set(g.n()))?;
    if dom.count_ones(..) <= 3 * d {
        ctx.branch("p5:small-dominating-set");
        let cert = solve_with_dominating_set(g, &dom, d)?;
        return Ok(ctx.finish(cert, "p5-free/dominating-set"));
    }
    assert!(g.is_clique(&dom), "a dominating structure with more than 5 vertices is a clique");
    let mut rest = full_set(g.n());
    rest.difference_with(&dom);
    let mut cert = None;
    for l1 in components_within(g, &rest) {
        ctx.branch("p5:main");
        cert = level(&ctx, &dom, &l1, 1)?;
        if cert.is_some() {
            break;
        }
    }
    Ok(ctx.finish(cert, NAME))
}

/// A dominating clique or C5 of `G[within]`, in `g`'s labels.
fn dominating_structure(g: &Graph, within: &VertexSet) -> Result<VertexSet, SolveError> {
    let (sub, map) = g.induced_subgraph(within);
    let found = find_dominating_clique_or_c5(&sub)?;
    Ok(crate::graph::vertex_set(g.n(), found.vertices.ones().map(|u| map[u])))
}

/// Blue phase at level `h`: everything outside `lh` is blue.
fn level(ctx: &Ctx, dom: &VertexSet, lh: &VertexSet, h: usize) -> Result<Option<DCutCertificate>, SolveError> {
    let (g, d) = (ctx.g, ctx.d);
    let dh = dominating_structure(g, lh)?;
    let mut outside = full_set(g.n());
    outside.difference_with(lh);
    let mut base = PartialColouring::new(g.n());
    base.set_all(&outside, Colour::Blue);
    if let Some(base) = ctx.settle(&base) {
        let found = if dh.count_ones(..) <= 2 * d + 1 {
            red_small(ctx, &base, &dh)
        } else {
            red_large(ctx, &base, dom, &dh, lh)
        };
        if found.is_some() {
            return Ok(found);
        }
    }
    // a red vertex below level d would have d+1 blue neighbours, one in
    // each of D, D_1, ..., D_d
    if h == d {
        return Ok(None);
    }
    let mut rest = lh.clone();
    rest.difference_with(&dh);
    for next in components_within(g, &rest) {
        ctx.branch("p5:main");
        if let Some(cert) = level(ctx, dom, &next, h + 1)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Red phase, `|D_i| <= 2d+1`: every colouring of `D_i` with a red vertex,
/// then every budget-respecting colouring of its neighbours.
fn red_small(ctx: &Ctx, base: &PartialColouring, dh: &VertexSet) -> Option<DCutCertificate> {
    let g = ctx.g;
    let members: Vec<_> = dh.ones().collect();
    let mut frontier = g.neighbourhood_of(dh);
    frontier.union_with(dh);
    for mask in 1u32..(1 << members.len()) {
        let mut pc = base.clone();
        let mut clash = false;
        for (k, &u) in members.iter().enumerate() {
            let c = if mask >> k & 1 == 1 { Colour::Red } else { Colour::Blue };
            clash |= pc.colour(u) == Some(c.opposite());
            pc.set(u, c);
        }
        if clash {
            continue;
        }
        ctx.branch("p5:side-small");
        for done in ctx.extend(&pc, &frontier, "p5:side-small") {
            // D_i dominates L_i, which holds every uncoloured vertex
            assert!(done.is_complete(), "side branch left vertices uncoloured");
            if let Some(cert) = ctx.accept(&done) {
                return Some(cert);
            }
        }
    }
    None
}

/// Red phase, `|D_i| >= 2d+2`: `D_i` is a red clique; grow outwards from
/// `x_1 ∈ D_i` and one blue neighbour `y_1 ∈ D`, then from further `x_j`.
fn red_large(
    ctx: &Ctx,
    base: &PartialColouring,
    dom: &VertexSet,
    dh: &VertexSet,
    lh: &VertexSet,
) -> Option<DCutCertificate> {
    let (g, d) = (ctx.g, ctx.d);
    ctx.branch("p5:side-large");
    let pc = with_colour(base, dh, Colour::Red)?;
    if dh.ones().any(|x| g.degree_into(x, dom) > d) || dom.ones().any(|y| g.degree_into(y, dh) > d) {
        return None;
    }
    // vertices with d+1 neighbours in D go blue; processing does exactly this
    let pc = ctx.settle(&pc)?;
    grow(ctx, &pc, dom, dh, lh, 1)
}

fn grow(
    ctx: &Ctx,
    pc: &PartialColouring,
    dom: &VertexSet,
    dh: &VertexSet,
    lh: &VertexSet,
    j: usize,
) -> Option<DCutCertificate> {
    let (g, d) = (ctx.g, ctx.d);
    let Some(w) = pc.uncoloured().ones().next() else {
        return ctx.accept(pc);
    };
    assert!(lh.contains(w) && !dh.contains(w), "uncoloured vertex {w} outside L_i - D_i");
    assert!(j <= d, "red phase needed {j} growth steps, more than d = {d}");
    let x = g.neighbours(w).intersection(dh).next().expect("D_i dominates L_i");
    let mut frontier = g.neighbours(x).clone();
    if j == 1 {
        let y = g.neighbours(x).intersection(dom).next().expect("D dominates G");
        frontier.union_with(g.neighbours(y));
    }
    frontier.difference_with(&pc.coloured());
    for next in ctx.extend(pc, &frontier, "p5:grow") {
        if let Some(cert) = grow(ctx, &next, dom, dh, lh, j + 1) {
            return Some(cert);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::oracle_solve;

    #[test]
    fn small_examples() {
        assert!(solve_p5_free(&Graph::star(5), 2).unwrap().is_yes());
        assert!(!solve_p5_free(&Graph::complete(7), 3).unwrap().is_yes());
        assert!(!solve_p5_free(&Graph::complete(10), 3).unwrap().is_yes());
        assert!(solve_p5_free(&Graph::complete(6), 3).unwrap().is_yes());
    }

    #[test]
    fn rejects_p5() {
        assert!(matches!(solve_p5_free(&Graph::path(5), 2), Err(SolveError::NotP5Free { .. })));
    }

    #[test]
    fn big_clique_with_pendants() {
        // K8 plus pendant paths of length 2 hanging off three clique vertices
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for u in 0..8 {
            for v in u + 1..8 {
                edges.push((u, v));
            }
        }
        edges.extend([(0, 8), (8, 9), (1, 10), (10, 9), (2, 11)]);
        let g = Graph::from_edges(12, edges).unwrap();
        if crate::graph::find_induced(&g, &PatternId::path(5)).is_none() {
            for d in 2..=3 {
                let want = oracle_solve(&g, d, None).unwrap().is_some();
                assert_eq!(solve_p5_free(&g, d).unwrap().is_yes(), want, "d = {d}");
            }
        }
    }
}
