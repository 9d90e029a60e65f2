//! d-Cut on (P3+P4)-free graphs.
//!
//! First look for a colouring in which some induced P4 is monochromatic
//! (taken blue), working outwards from its neighbourhood `N_1`; the far
//! region `N_2` splits into cliques. If there is none, every colouring can
//! be normalised so both colour classes have diameter at most 2, which
//! the second step exploits.

use super::{
    p5free::solve_p5_free_with, pattern_witness, require_connected, require_d, rules_for, with_colour, Ctx, SolveError,
    SolveOptions, SolveOutcome,
};
use crate::colouring::{Colour, DCutCertificate, PartialColouring};
use crate::graph::{components_within, full_set, induced_copies, vertex_set, Graph, PatternId, Vertex, VertexSet};

pub const NAME: &str = "p3p4-free";

pub fn solve_p3p4_free(g: &Graph, d: usize) -> Result<SolveOutcome, SolveError> {
    solve_p3p4_free_with(g, d, SolveOptions::default())
}

pub fn solve_p3p4_free_with(g: &Graph, d: usize, opts: SolveOptions) -> Result<SolveOutcome, SolveError> {
    require_d(d, 2)?;
    require_connected(g)?;
    if let Some(witness) = pattern_witness(g, &PatternId::p3_plus_p4()) {
        return Err(SolveError::NotP3P4Free { witness });
    }
    if pattern_witness(g, &PatternId::path(5)).is_none() {
        let mut out = solve_p5_free_with(g, d, opts)?;
        out.algorithm = format!("{NAME}/{}", out.algorithm);
        return Ok(out);
    }
    let ctx = Ctx::new(g, d, rules_for(opts));
    let search = Search { ctx: &ctx, check_saturation_claims: opts.saturation };
    let p4s = induced_copies(g, &PatternId::path(4));
    let mut cert = None;
    for p in &p4s {
        ctx.branch("p3p4:p4");
        cert = search.monochromatic(p);
        if cert.is_some() {
            break;
        }
    }
    if cert.is_none() {
        cert = search.bichromatic(&p4s[0]);
    }
    Ok(ctx.finish(cert, NAME))
}

struct Search<'a, 'g> {
    ctx: &'a Ctx<'g>,
    check_saturation_claims: bool,
}

/// The P4 being worked on and the current boundary `N_1`; `N_2` is the rest.
#[derive(Clone)]
struct Frame {
    p: VertexSet,
    n1: VertexSet,
}

impl Frame {
    fn n2(&self) -> VertexSet {
        let mut s = full_set(self.p.len());
        s.difference_with(&self.p);
        s.difference_with(&self.n1);
        s
    }
}

fn list(s: &VertexSet) -> Vec<Vertex> {
    s.ones().collect()
}

impl Search<'_, '_> {
    fn g(&self) -> &Graph {
        self.ctx.g
    }

    fn d(&self) -> usize {
        self.ctx.d
    }

    /// Components of `G[N_2]` that still hold an uncoloured vertex.
    fn open_components(&self, pc: &PartialColouring, f: &Frame) -> Vec<VertexSet> {
        components_within(self.g(), &f.n2()).into_iter().filter(|c| c.ones().any(|v| !pc.is_coloured(v))).collect()
    }

    // ---- step 1: some induced P4 is monochromatic -------------------------

    fn monochromatic(&self, path: &[Vertex]) -> Option<DCutCertificate> {
        let (g, d) = (self.g(), self.d());
        let n = g.n();
        let p = vertex_set(n, path.iter().copied());
        let mut n1 = g.neighbourhood_of(&p);
        n1.difference_with(&p);
        let frame = Frame { p: p.clone(), n1: n1.clone() };
        for comp in components_within(g, &frame.n2()) {
            assert!(
                g.is_clique(&comp),
                "component {:?} outside N[P] for P = {path:?} is not a clique (d = {d})",
                list(&comp)
            );
        }
        let mut start = PartialColouring::new(n);
        start.set_all(&p, Colour::Blue);
        for pc in self.ctx.extend(&start, &n1, "p3p4:n1") {
            let mut s = pc.red().clone();
            s.intersect_with(&n1);
            let found =
                if s.is_clear() { self.all_blue_boundary(&pc, &frame) } else { self.red_boundary(&pc, &frame, &s) };
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// `V(P) ∪ N_1` all blue: the red vertices sit in a single component.
    fn all_blue_boundary(&self, pc: &PartialColouring, f: &Frame) -> Option<DCutCertificate> {
        let n2 = f.n2();
        for comp in components_within(self.g(), &n2) {
            let mut others = n2.clone();
            others.difference_with(&comp);
            let Some(base) = with_colour(pc, &others, Colour::Blue) else { continue };
            for done in self.ctx.extend(&base, &comp, "p3p4:one-component") {
                if let Some(cert) = self.ctx.accept(&done) {
                    return Some(cert);
                }
            }
        }
        None
    }

    /// Apply colour-processing, `N_1`-updates and the component rules until
    /// nothing changes. `None` if the branch dies.
    fn normalise(&self, pc: &PartialColouring, f: &Frame) -> Option<(PartialColouring, Frame)> {
        let (g, d) = (self.g(), self.d());
        let mut pc = pc.clone();
        let mut f = f.clone();
        loop {
            pc = self.ctx.settle(&pc)?;
            let mut moved = f.n2();
            moved.intersect_with(pc.blue());
            f.n1.union_with(&moved);
            let mut changed = false;
            for comp in self.open_components(&pc, &f) {
                let open: Vec<Vertex> = comp.ones().filter(|&v| !pc.is_coloured(v)).collect();
                if open.len() == comp.count_ones(..) {
                    // only blue neighbours outside: safe to make it blue
                    pc.set_all(&comp, Colour::Blue);
                    changed = true;
                } else if comp.count_ones(..) > 2 * d || open.iter().all(|&v| g.degree_into(v, pc.blue()) == 0) {
                    for &v in &open {
                        pc.set(v, Colour::Red);
                    }
                    changed = true;
                }
            }
            if !changed {
                return Some((pc, f));
            }
        }
    }

    fn check_open_components(&self, pc: &PartialColouring, f: &Frame, s: &VertexSet) {
        let (g, d) = (self.g(), self.d());
        let mut red_n1 = f.n1.clone();
        red_n1.intersect_with(pc.red());
        assert_eq!(red_n1, *s, "red boundary vertices changed");
        for comp in self.open_components(pc, f) {
            let who = list(&comp);
            assert!(
                g.is_clique(&comp) && comp.count_ones(..) <= 2 * d,
                "open component {who:?}: not a clique of size <= 2d"
            );
            assert!(
                comp.ones().any(|v| pc.colour(v) == Some(Colour::Red) && g.degree_into(v, s) > 0),
                "open component {who:?} has no red vertex next to S"
            );
            assert!(
                comp.ones().any(|v| !pc.is_coloured(v)
                    && g.neighbours(v).intersection(&f.n1).any(|b| pc.colour(b) == Some(Colour::Blue))),
                "open component {who:?} has no uncoloured vertex with a blue boundary neighbour"
            );
            assert!(
                comp.ones().all(|v| pc.colour(v) != Some(Colour::Blue)),
                "open component {who:?} has a blue vertex"
            );
            assert!(
                comp.ones().all(|v| pc.is_coloured(v) || g.degree_into(v, &red_n1) == 0),
                "open component {who:?} has an uncoloured vertex with a red boundary neighbour"
            );
        }
    }

    /// Some boundary vertices (`s`) are red.
    fn red_boundary(&self, pc: &PartialColouring, f: &Frame, s: &VertexSet) -> Option<DCutCertificate> {
        let g = self.g();
        let mut frontier = g.neighbourhood_of(s);
        frontier.difference_with(&f.p);
        for next in self.ctx.extend(pc, &frontier, "p3p4:n-of-s") {
            let Some((pc, f)) = self.normalise(&next, f) else { continue };
            if pc.is_complete() {
                if let Some(cert) = self.ctx.accept(&pc) {
                    return Some(cert);
                }
                continue;
            }
            self.check_open_components(&pc, &f, s);
            let comps = self.open_components(&pc, &f);
            let found = match self.straddler(&pc, s, &comps) {
                Some((r, i, j)) => self.case_straddle(&pc, &f, &comps, r, i, j),
                None => self.case_single(&pc, &f, s, &comps),
            };
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// A red boundary vertex with red neighbours in two open components.
    fn straddler(&self, pc: &PartialColouring, s: &VertexSet, comps: &[VertexSet]) -> Option<(Vertex, usize, usize)> {
        let g = self.g();
        s.ones().find_map(|r| {
            let hit: Vec<usize> = (0..comps.len())
                .filter(|&k| g.neighbours(r).intersection(&comps[k]).any(|v| pc.colour(v) == Some(Colour::Red)))
                .take(2)
                .collect();
            (hit.len() == 2).then(|| (r, hit[0], hit[1]))
        })
    }

    fn case_straddle(
        &self,
        pc: &PartialColouring,
        f: &Frame,
        comps: &[VertexSet],
        r: Vertex,
        i: usize,
        j: usize,
    ) -> Option<DCutCertificate> {
        let (g, d) = (self.g(), self.d());
        let red_in = |k: usize| {
            g.neighbours(r)
                .intersection(&comps[k])
                .find(|&v| pc.colour(v) == Some(Colour::Red))
                .expect("straddler has a red neighbour here")
        };
        let (r1, r2) = (red_in(i), red_in(j));
        let u = comps[i].ones().find(|&v| !pc.is_coloured(v)).expect("open component");
        let q = [u, r1, r, r2];
        assert!(is_induced_path(g, &q), "{q:?} should induce a P4");
        let open = pc.uncoloured();
        let rest: Vec<&VertexSet> = (0..comps.len()).filter(|&k| k != i && k != j).map(|k| &comps[k]).collect();
        let t: Vec<Vertex> = f
            .n1
            .ones()
            .filter(|&b| pc.colour(b) == Some(Colour::Blue))
            .filter(|&b| rest.iter().filter(|c| g.neighbours(b).intersection(c).any(|v| open.contains(v))).count() >= 2)
            .collect();
        assert!(t.len() <= 4 * d, "T = {t:?} has more than 4d vertices");
        let mut frontier = g.neighbourhood_of(&vertex_set(g.n(), t.iter().copied()));
        frontier.union_with(&comps[i]);
        frontier.union_with(&comps[j]);
        frontier.intersect_with(&open);
        for next in self.ctx.extend(pc, &frontier, "p3p4:straddle") {
            let groups = independent_groups(g, &next);
            for grp in &groups {
                let owner = rest.iter().filter(|c| !c.is_disjoint(grp)).count();
                assert!(
                    owner == 1 && rest.iter().any(|c| grp.is_subset(c)),
                    "group {:?} is not inside one component",
                    list(grp)
                );
            }
            if let Some(cert) = self.complete_groups(&next, &groups, "p3p4:straddle-group") {
                return Some(cert);
            }
        }
        None
    }

    fn case_single(
        &self,
        pc: &PartialColouring,
        f: &Frame,
        s: &VertexSet,
        comps: &[VertexSet],
    ) -> Option<DCutCertificate> {
        let (g, d) = (self.g(), self.d());
        let f1 = &comps[0];
        let x = f1.ones().find(|&v| !pc.is_coloured(v)).expect("open component");
        let (r1, r) = f1
            .ones()
            .filter(|&v| pc.colour(v) == Some(Colour::Red))
            .find_map(|v| g.neighbours(v).intersection(s).next().map(|r| (v, r)))
            .expect("open component has a red vertex next to S");
        let j = [x, r1, r];
        assert!(is_induced_path(g, &j), "{j:?} should induce a P3");
        let jset = vertex_set(g.n(), j);
        let mut gamma = g.neighbourhood_of(&jset);
        gamma.intersect_with(pc.blue());
        assert!(gamma.count_ones(..) <= 3 * d, "Gamma = {:?} has more than 3d vertices", list(&gamma));
        let mut frontier = g.neighbourhood_of(&gamma);
        frontier.union_with(f1);
        frontier.intersect_with(&pc.uncoloured());
        for next in self.ctx.extend(pc, &frontier, "p3p4:single") {
            let Some((pc, f)) = self.normalise(&next, f) else { continue };
            if pc.is_complete() {
                if let Some(cert) = self.ctx.accept(&pc) {
                    return Some(cert);
                }
                continue;
            }
            let groups = independent_groups(g, &pc);
            self.check_blocks(&pc, &f, &groups);
            if let Some(cert) = self.complete_groups(&pc, &groups, "p3p4:block") {
                return Some(cert);
            }
        }
        None
    }

    /// Type-(i)/(ii) classification of blue boundary vertices, the
    /// collective-component bound, and the shape of each block.
    fn check_blocks(&self, pc: &PartialColouring, f: &Frame, groups: &[VertexSet]) {
        let (g, d) = (self.g(), self.d());
        let comps = self.open_components(pc, f);
        let open = pc.uncoloured();
        let touched = |b: Vertex| -> Vec<usize> {
            (0..comps.len()).filter(|&k| g.neighbours(b).intersection(&comps[k]).any(|v| open.contains(v))).collect()
        };
        let blue_n1: Vec<Vertex> = f.n1.ones().filter(|&b| pc.colour(b) == Some(Colour::Blue)).collect();
        let mut collective = vec![false; comps.len()];
        for &b in &blue_n1 {
            let hit = touched(b);
            let type_one = hit.len() <= 1;
            let type_two = hit.iter().all(|&k| comps[k].is_subset(g.neighbours(b)));
            assert!(type_one || type_two, "blue vertex {b} is of neither type (touches {hit:?})");
            if !type_one {
                for &k in &hit {
                    collective[k] = true;
                }
            }
        }
        if self.check_saturation_claims {
            for &b in &blue_n1 {
                let k = touched(b).into_iter().filter(|&k| collective[k]).count();
                assert!(k < d, "blue vertex {b} reaches {k} collective components (d = {d})");
            }
        }
        for grp in groups {
            let members: Vec<usize> = (0..comps.len()).filter(|&k| !comps[k].is_disjoint(grp)).collect();
            if members.len() <= 1 {
                continue;
            }
            assert!(members.iter().all(|&k| collective[k]), "block {members:?} mixes in an individual component");
            if self.check_saturation_claims {
                assert!(members.len() < d, "block {members:?} has more than d-1 components");
            }
            assert!(
                blue_n1.iter().any(|&b| members.iter().all(|&k| comps[k].is_subset(g.neighbours(b)))),
                "block {members:?} has no blue vertex seeing all of it"
            );
        }
    }

    /// Colour each group on its own; the groups do not interact.
    fn complete_groups(
        &self,
        pc: &PartialColouring,
        groups: &[VertexSet],
        phase: &'static str,
    ) -> Option<DCutCertificate> {
        let (g, d) = (self.g(), self.d());
        let mut out = pc.clone();
        for grp in groups {
            let vs = list(grp);
            assert!(vs.len() <= 24, "group of {} vertices is too large to enumerate", vs.len());
            let mut touched = g.neighbourhood_of(grp);
            touched.intersect_with(&pc.coloured());
            touched.union_with(grp);
            let mut ok = None;
            for mask in 0u32..(1u32 << vs.len()) {
                self.ctx.branch(phase);
                let mut local = pc.clone();
                for (k, &v) in vs.iter().enumerate() {
                    local.set(v, if mask >> k & 1 == 1 { Colour::Blue } else { Colour::Red });
                }
                let fine = touched.ones().all(|v| {
                    let c = local.colour(v).expect("coloured");
                    g.degree_into(v, local.class(c.opposite())) <= d
                });
                if fine {
                    ok = Some(local);
                    break;
                }
            }
            let local = ok?;
            for &v in &vs {
                out.set(v, local.colour(v).expect("coloured"));
            }
        }
        let cert = self.ctx.accept(&out);
        assert!(cert.is_some(), "independently completed groups do not combine to a valid colouring");
        cert
    }

    // ---- step 2: every induced P4 is bichromatic ---------------------------

    fn bichromatic(&self, path: &[Vertex]) -> Option<DCutCertificate> {
        let g = self.g();
        let n = g.n();
        let p = vertex_set(n, path.iter().copied());
        let ball = g.closed_neighbourhood_of(&p);
        let mut n2 = full_set(n);
        n2.difference_with(&ball);
        let mut n1 = ball.clone();
        n1.difference_with(&p);
        let mut start = PartialColouring::new(n);
        start.set(path[0], Colour::Red);
        for pc in self.ctx.extend(&start, &ball, "p3p4:bichromatic") {
            let Some(x) = pc.uncoloured().ones().next() else {
                if let Some(cert) = self.ctx.accept(&pc) {
                    return Some(cert);
                }
                continue;
            };
            assert!(n2.contains(x), "uncoloured vertex {x} inside N[P]");
            let f1 = components_within(g, &n2).into_iter().find(|c| c.contains(x)).expect("x lies in N_2");
            let mut seen = g.neighbours(x).clone();
            seen.intersect_with(&n1);
            let mut frontier = g.neighbourhood_of(&seen);
            frontier.union_with(&f1);
            frontier.intersect_with(&pc.uncoloured());
            for next in self.ctx.extend(&pc, &frontier, "p3p4:bichromatic-x") {
                let cx = next.colour(x).expect("x was branched on");
                let mut last = next.clone();
                for v in next.uncoloured().ones() {
                    assert!(n2.contains(v) && !f1.contains(v), "vertex {v} left for the final sweep");
                    last.set(v, cx.opposite());
                }
                if let Some(cert) = self.ctx.accept(&last) {
                    return Some(cert);
                }
            }
        }
        None
    }
}

/// Consecutive vertices adjacent, all other pairs not.
fn is_induced_path(g: &Graph, path: &[Vertex]) -> bool {
    (0..path.len()).all(|i| (i + 1..path.len()).all(|j| g.has_edge(path[i], path[j]) == (j == i + 1)))
}

/// Partition the uncoloured vertices so that no edge and no coloured
/// vertex's neighbourhood joins two parts.
fn independent_groups(g: &Graph, pc: &PartialColouring) -> Vec<VertexSet> {
    let n = g.n();
    let mut parent: Vec<Vertex> = (0..n).collect();
    fn find(parent: &mut [Vertex], mut v: Vertex) -> Vertex {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let open = pc.uncoloured();
    for v in g.vertices() {
        let mut nbrs = g.neighbours(v).intersection(&open);
        let anchor = if open.contains(v) { Some(v) } else { nbrs.next() };
        let Some(a) = anchor else { continue };
        for w in g.neighbours(v).intersection(&open) {
            let (ra, rw) = (find(&mut parent, a), find(&mut parent, w));
            parent[ra] = rw;
        }
    }
    let mut groups: std::collections::BTreeMap<Vertex, VertexSet> = std::collections::BTreeMap::new();
    for v in open.ones() {
        let root = find(&mut parent, v);
        groups.entry(root).or_insert_with(|| VertexSet::with_capacity(n)).insert(v);
    }
    let mut out: Vec<VertexSet> = groups.into_values().collect();
    out.sort_by_key(|s| s.ones().next());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::oracle_solve;
    use crate::graph::parse_graph6;

    #[test]
    fn small_examples() {
        assert!(solve_p3p4_free(&Graph::path(4), 2).unwrap().is_yes());
        assert!(!solve_p3p4_free(&Graph::complete(6), 2).unwrap().is_yes());
        let p6 = Graph::path(6);
        assert_eq!(solve_p3p4_free(&p6, 2).unwrap().is_yes(), oracle_solve(&p6, 2, None).unwrap().is_some());
    }

    #[test]
    fn rejects_p3_plus_p4() {
        let g = Graph::path(3).disjoint_union(&Graph::path(4));
        let mut edges: Vec<_> = g.edges().collect();
        // hang both pieces off a new hub far enough away
        edges.extend([(7, 0), (7, 8), (8, 3)]);
        let h = Graph::from_edges(9, edges).unwrap();
        assert!(matches!(solve_p3p4_free(&h, 2), Err(SolveError::NotP3P4Free { .. })));
    }

    #[test]
    fn induced_path_respects_order() {
        let g = parse_graph6("IaSOlghpo").unwrap();
        assert!(is_induced_path(&g, &[2, 8, 4]));
        assert!(!is_induced_path(&g, &[2, 4, 8]));
        for d in 2..=3 {
            assert_eq!(solve_p3p4_free(&g, d).unwrap().is_yes(), oracle_solve(&g, d, None).unwrap().is_some());
        }
    }

    #[test]
    fn groups_are_independent() {
        let g = Graph::star(4);
        let pc = PartialColouring::from_sets(5, [0], []).unwrap();
        assert_eq!(independent_groups(&g, &pc).len(), 1);
        let g = Graph::path(5);
        let pc = PartialColouring::from_sets(5, [0, 2, 4], []).unwrap();
        assert_eq!(independent_groups(&g, &pc).len(), 1);
        let pc = PartialColouring::from_sets(5, [2], []).unwrap();
        let groups = independent_groups(&g, &pc);
        assert_eq!(groups.len(), 1);
        assert_eq!(list(&groups[0]), vec![0, 1, 3, 4]);
    }
}
