//! d-Cut on graphs of diameter at most 2.

use itertools::Itertools;

use super::{require_connected, require_d, rules_for, Ctx, SolveError, SolveOptions, SolveOutcome};
use crate::colouring::{Colour, DCutCertificate, PartialColouring};
use crate::graph::{components_within, diameter, distances_from_within, vertex_set, Dist, Graph, Vertex, VertexSet};

pub const NAME: &str = "diameter-2";

/// Decide d-Cut for a connected graph of diameter at most 2, `d >= 2`.
pub fn solve_diameter2(g: &Graph, d: usize) -> Result<SolveOutcome, SolveError> {
    solve_diameter2_with(g, d, SolveOptions::default())
}

pub fn solve_diameter2_with(g: &Graph, d: usize, opts: SolveOptions) -> Result<SolveOutcome, SolveError> {
    require_d(d, 2)?;
    require_connected(g)?;
    let diam = diameter(g);
    if !diam.is_at_most(2) {
        return Err(SolveError::DiameterTooLarge(diam));
    }
    let ctx = Ctx::new(g, d, rules_for(opts));
    let cert = if g.n() == 0 { None } else { root(&ctx) };
    Ok(ctx.finish(cert, NAME))
}

fn root(ctx: &Ctx) -> Option<DCutCertificate> {
    let (g, d) = (ctx.g, ctx.d);
    let v = 0;
    let nbrs: Vec<Vertex> = g.neighbours(v).ones().collect();
    for k in 0..=d.min(nbrs.len()) {
        for blue in nbrs.iter().copied().combinations(k) {
            let mut pc = PartialColouring::new(g.n());
            pc.set(v, Colour::Red);
            for &u in &nbrs {
                pc.set(u, Colour::Red);
            }
            for &u in &blue {
                pc.set(u, Colour::Blue);
            }
            // with N(v) all red, some vertex further out must be blue; the
            // `None` option leaves it to the search
            let extra: Vec<Option<Vertex>> = if k == 0 {
                std::iter::once(None).chain(g.vertices().filter(|&x| x != v && !g.has_edge(v, x)).map(Some)).collect()
            } else {
                vec![None]
            };
            for x in extra {
                ctx.branch("diam2:root");
                let mut start = pc.clone();
                if let Some(x) = x {
                    start.set(x, Colour::Blue);
                }
                let Some(start) = ctx.settle(&start) else { continue };
                if let Some(cert) = descend(ctx, &start, 0) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

/// Eccentricities of the vertices of `z` inside `G[z]`.
fn eccentricities_within(g: &Graph, z: &VertexSet) -> Vec<(Vertex, Dist)> {
    z.ones()
        .map(|u| {
            let dist = distances_from_within(g, u, z);
            (u, z.ones().map(|w| dist[w]).max().unwrap_or(Dist::Finite(0)))
        })
        .collect()
}

/// `pc` is propagated; `balls` counts dominating-ball steps taken so far.
fn descend(ctx: &Ctx, pc: &PartialColouring, balls: usize) -> Option<DCutCertificate> {
    let (g, d) = (ctx.g, ctx.d);
    let z = pc.uncoloured();
    if z.is_clear() {
        return ctx.accept(pc);
    }
    let comps = components_within(g, &z);
    if comps.len() >= 2 {
        return split(ctx, pc, &comps);
    }
    let ecc = eccentricities_within(g, &z);
    let radius = ecc.iter().map(|&(_, e)| e).min().expect("z is nonempty");
    if radius > Dist::Finite(2) {
        let z0 = z.ones().next().expect("z is nonempty");
        let dist = distances_from_within(g, z0, &z);
        let far = vertex_set(g.n(), z.ones().filter(|&u| dist[u] > Dist::Finite(2)));
        debug_assert!(!far.is_clear());
        for next in ctx.extend(pc, &far, "diam2:far") {
            if let Some(cert) = descend(ctx, &next, balls) {
                return Some(cert);
            }
        }
        return None;
    }
    // each ball step gives every vertex still uncoloured one more coloured
    // neighbour, and they start with one in N(v); 2d+1 would force them
    assert!(
        balls < 2 * d,
        "ball step {} exceeds the 2d bound (d = {d}); uncoloured: {:?}",
        balls + 1,
        z.ones().collect::<Vec<_>>()
    );
    let (centre, _) = ecc.iter().copied().find(|&(_, e)| e == radius).expect("some vertex attains the radius");
    let mut ball = g.neighbours(centre).clone();
    ball.intersect_with(&z);
    ball.insert(centre);
    for next in ctx.extend(pc, &ball, "diam2:ball") {
        if let Some(cert) = descend(ctx, &next, balls + 1) {
            return Some(cert);
        }
    }
    None
}

/// Several uncoloured components: their common coloured neighbours with
/// the first two components cover everything, and are few.
fn split(ctx: &Ctx, pc: &PartialColouring, comps: &[VertexSet]) -> Option<DCutCertificate> {
    let (g, d) = (ctx.g, ctx.d);
    let n = g.n();
    let v1 = comps[0].ones().next().expect("components are nonempty");
    let v2 = comps[1].ones().next().expect("components are nonempty");
    let mut rest1 = VertexSet::with_capacity(n);
    for c in &comps[1..] {
        rest1.union_with(c);
    }
    let common = |a: Vertex, others: &VertexSet| {
        let mut s = g.neighbours(a).clone();
        s.intersect_with(&g.neighbourhood_of(others));
        s
    };
    let n1 = common(v1, &rest1);
    let n2 = common(v2, &comps[0]);
    for (name, s) in [("N1", &n1), ("N2", &n2)] {
        assert!(
            s.ones().all(|u| pc.is_coloured(u)) && s.count_ones(..) <= 2 * d,
            "{name} = {:?} should be coloured and of size at most 2d",
            s.ones().collect::<Vec<_>>()
        );
    }
    let mut hub = n1;
    hub.union_with(&n2);
    let mut frontier = g.neighbourhood_of(&hub);
    frontier.difference_with(&pc.coloured());
    debug_assert!(pc.uncoloured().is_subset(&frontier));
    for next in ctx.extend(pc, &frontier, "diam2:split") {
        assert!(next.is_complete(), "split step left vertices uncoloured");
        if let Some(cert) = ctx.accept(&next) {
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
        assert!(solve_diameter2(&Graph::cycle(5), 2).unwrap().is_yes());
        assert!(!solve_diameter2(&Graph::complete(6), 2).unwrap().is_yes());
        assert!(solve_diameter2(&Graph::complete(4), 2).unwrap().is_yes());
        let p = Graph::petersen();
        for d in 2..=3 {
            let want = oracle_solve(&p, d, None).unwrap().is_some();
            assert_eq!(solve_diameter2(&p, d).unwrap().is_yes(), want);
        }
    }

    #[test]
    fn preconditions() {
        assert_eq!(solve_diameter2(&Graph::path(4), 2), Err(SolveError::DiameterTooLarge(Dist::Finite(3))));
        assert_eq!(solve_diameter2(&Graph::empty(2), 2), Err(SolveError::Disconnected));
        assert_eq!(solve_diameter2(&Graph::cycle(5), 1), Err(SolveError::DTooSmall { d: 1, min: 2 }));
    }
}
