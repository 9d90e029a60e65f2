//! NAE-3SAT to red-blue edge d-colouring, d >= 3.
//!
//! Cliques S and S̄ hold one vertex per variable and d-2 per clause; each
//! variable gets cliques V_x and V_x̄ (d-1 base vertices, plus one vertex per
//! occurrence in V_x). A connector v_x joins x's vertices in S, S̄ and the
//! base of V_x, V_x̄; a clause vertex v_c joins c's vertices in S, S̄ and its
//! three occurrence vertices. Every clique is padded to 2d+2 vertices.

use std::collections::HashMap;

use super::{
    check_assignment, check_input, CnfInstance, Flavour, GadgetError, GadgetKind, GadgetOutput, NamedClique, PreLine,
    Role,
};
use crate::colouring::{extend_budgeted, Colour, EdgeColouring, PartialColouring};
use crate::graph::{full_set, line_graph, vertex_set, Graph, Vertex, VertexSet};

struct Builder {
    roles: Vec<Role>,
    edges: Vec<(Vertex, Vertex)>,
    cliques: Vec<NamedClique>,
    min_clique: usize,
}

impl Builder {
    fn add(&mut self, role: &str, index: impl Into<Vec<usize>>) -> Vertex {
        let v = self.roles.len();
        self.roles.push(Role::new(v, role, index));
        v
    }

    fn clique(&mut self, name: String, mut members: Vec<Vertex>) {
        let id = self.cliques.len();
        for k in 0..self.min_clique.saturating_sub(members.len()) {
            members.push(self.add("aux", [id, k]));
        }
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                self.edges.push((u, v));
            }
        }
        self.cliques.push(NamedClique { name, vertices: members });
    }
}

pub fn build_line_gadget(inst: &CnfInstance, d: usize) -> Result<GadgetOutput, GadgetError> {
    check_input(inst, Flavour::NaeAllPositive, d, 3)?;
    let (n, m) = (inst.n_vars, inst.clauses.len());
    let mut b = Builder { roles: Vec::new(), edges: Vec::new(), cliques: Vec::new(), min_clique: 2 * d + 2 };

    // S and S̄: per-variable vertices, then d-2 per clause
    let mut var_side = [Vec::new(), Vec::new()];
    let mut clause_side = [Vec::new(), Vec::new()];
    for (side, name) in ["S", "Sbar"].into_iter().enumerate() {
        let mut members = Vec::new();
        for h in 0..n {
            let v = b.add(name, [0, h]);
            var_side[side].push(v);
            members.push(v);
        }
        for j in 0..m {
            let vs: Vec<_> = (0..d - 2).map(|k| b.add(name, [1, j, k])).collect();
            members.extend(&vs);
            clause_side[side].push(vs);
        }
        b.clique(name.to_string(), members);
    }

    let mut base = [Vec::new(), Vec::new()];
    let mut occurrence = HashMap::new();
    for h in 0..n {
        let mut vx: Vec<_> = (0..d - 1).map(|k| b.add("V_x", [h, 0, k])).collect();
        base[0].push(vx.clone());
        for (j, c) in inst.clauses.iter().enumerate() {
            if c.iter().any(|&l| CnfInstance::var(l) == h) {
                let v = b.add("V_x", [h, 1, j]);
                occurrence.insert((j, h), v);
                vx.push(v);
            }
        }
        b.clique(format!("V_x{}", h + 1), vx);
        let vbar: Vec<_> = (0..d - 1).map(|k| b.add("V_xbar", [h, k])).collect();
        base[1].push(vbar.clone());
        b.clique(format!("V_xbar{}", h + 1), vbar);
    }

    for h in 0..n {
        let v = b.add("v_x", [h]);
        let mut nbrs = vec![var_side[0][h], var_side[1][h]];
        nbrs.extend(&base[0][h]);
        nbrs.extend(&base[1][h]);
        b.edges.extend(nbrs.into_iter().map(|u| (u, v)));
    }
    for (j, c) in inst.clauses.iter().enumerate() {
        let v = b.add("v_c", [j]);
        let mut nbrs = clause_side[0][j].clone();
        nbrs.extend(&clause_side[1][j]);
        nbrs.extend(c.iter().map(|&l| occurrence[&(j, CnfInstance::var(l))]));
        b.edges.extend(nbrs.into_iter().map(|u| (u, v)));
    }

    let pre = Graph::from_edges(b.roles.len(), b.edges).expect("gadget edges are in range");
    let (line, edges) = line_graph(&pre);
    let roles = edges.iter().enumerate().map(|(i, &(u, v))| Role::new(i, "edge", [u, v])).collect();
    Ok(GadgetOutput {
        kind: GadgetKind::LineGadget,
        d,
        graph: line,
        roles,
        pre_line: Some(PreLine { graph: pre, roles: b.roles, cliques: b.cliques, edges }),
    })
}

fn pre_line(out: &GadgetOutput) -> &PreLine {
    out.pre_line.as_ref().expect("not a line gadget")
}

/// Colour of each named clique under `a`: S red, S̄ blue, V_x red iff x is
/// true and V_x̄ the other way. Cliques are stored as S, S̄, then V_x, V_x̄
/// per variable.
fn clique_colour(id: usize, a: &[bool]) -> Colour {
    match id {
        0 => Colour::Red,
        1 => Colour::Blue,
        _ => {
            let (h, bar) = ((id - 2) / 2, (id - 2) % 2 == 1);
            if a[h] != bar {
                Colour::Red
            } else {
                Colour::Blue
            }
        }
    }
}

/// The edge colouring built from an NAE-satisfying assignment: each clique
/// takes its colour, and an edge from a connector or clause vertex takes the
/// colour of the clique at its other end.
pub fn witness_edge_colouring(
    out: &GadgetOutput,
    inst: &CnfInstance,
    a: &[bool],
) -> Result<EdgeColouring, GadgetError> {
    check_assignment(inst, a)?;
    let pre = pre_line(out);
    let mut owner = vec![None; pre.graph.n()];
    for (id, c) in pre.cliques.iter().enumerate() {
        for &v in &c.vertices {
            owner[v] = Some(id);
        }
    }
    let mut ec = EdgeColouring::default();
    for &(u, v) in &pre.edges {
        let id = match (owner[u], owner[v]) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "edge {u}-{v} joins two named cliques");
                x
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => panic!("edge {u}-{v} touches no named clique"),
        };
        ec.set(u, v, clique_colour(id, a));
    }
    Ok(ec)
}

/// `ec` as a vertex colouring of the line graph.
pub fn line_image(out: &GadgetOutput, ec: &EdgeColouring) -> (VertexSet, VertexSet) {
    let pre = pre_line(out);
    let n = pre.edges.len();
    let red = vertex_set(n, (0..n).filter(|&i| ec.get(pre.edges[i].0, pre.edges[i].1) == Some(Colour::Red)));
    let blue = vertex_set(n, (0..n).filter(|&i| ec.get(pre.edges[i].0, pre.edges[i].1) == Some(Colour::Blue)));
    (red, blue)
}

/// Mixed seedings of every named clique, each of which should leave no
/// budget-respecting extension in the line graph. For a clique vertex `a`
/// with two clique neighbours `b`, `c`: `ab` red and `ac` blue, extended
/// over the edges at `a`. For two disjoint clique edges `ab`, `ce`: `ab` red
/// and `ce` blue, extended over the edges at `a` and `c`. Returns a
/// description of every seeding that survived.
pub fn check_clique_claim(out: &GadgetOutput) -> Vec<String> {
    let pre = pre_line(out);
    let d = out.d;
    let index: HashMap<(Vertex, Vertex), usize> = pre.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let line = |u: Vertex, v: Vertex| index[&(u.min(v), u.max(v))];
    let star = |a: Vertex| vertex_set(pre.edges.len(), pre.graph.neighbours(a).ones().map(|b| line(a, b)));
    // extensions are searched in the subgraph induced by the frontier: a
    // full extension would restrict to one there
    let survives = |red: usize, blue: usize, frontier: &VertexSet| {
        let (sub, map) = out.graph.induced_subgraph(frontier);
        let at = |v: usize| map.iter().position(|&u| u == v).expect("seed inside the frontier");
        let mut pc = PartialColouring::new(sub.n());
        pc.set(at(red), Colour::Red);
        pc.set(at(blue), Colour::Blue);
        extend_budgeted(&sub, &pc, &full_set(sub.n()), d).next().is_some()
    };
    let mut failures = Vec::new();
    for c in &pre.cliques {
        let k = c.vertices.len();
        if k < 4 {
            failures.push(format!("clique {} has only {k} vertices", c.name));
            continue;
        }
        for i in 0..k {
            let [a, b, e] = [0, 1, 2].map(|s| c.vertices[(i + s) % k]);
            if survives(line(a, b), line(a, e), &star(a)) {
                failures.push(format!("clique {}: mixed star at {a} extends", c.name));
            }
        }
        let [a, b, x, y] = [0, 1, 2, 3].map(|s| c.vertices[s]);
        let mut frontier = star(a);
        frontier.union_with(&star(x));
        if survives(line(a, b), line(x, y), &frontier) {
            failures.push(format!("clique {}: disjoint mixed edges extend", c.name));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{validate_colouring, validate_edge_colouring};

    fn one_clause() -> CnfInstance {
        CnfInstance { n_vars: 3, clauses: vec![vec![1, 2, 3]], flavour: Flavour::NaeAllPositive }
    }

    #[test]
    fn one_clause_counts() {
        let out = build_line_gadget(&one_clause(), 3).unwrap();
        let pre = out.pre_line.as_ref().unwrap();
        let sizes: Vec<_> = pre.cliques.iter().map(|c| c.vertices.len()).collect();
        assert_eq!(sizes, vec![8; 8]);
        // 8 cliques of 8, 3 connectors, 1 clause vertex
        assert_eq!(pre.graph.n(), 68);
        assert_eq!(pre.graph.m(), 8 * 28 + 3 * 6 + 5);
        assert_eq!(out.graph.n(), pre.graph.m());
        assert_eq!(pre.roles.iter().filter(|r| r.role == "aux").count(), 4 + 4 + 3 * (5 + 6));
    }

    #[test]
    fn forward_witness() {
        let inst = one_clause();
        let out = build_line_gadget(&inst, 3).unwrap();
        let pre = out.pre_line.as_ref().unwrap();
        let ec = witness_edge_colouring(&out, &inst, &[true, true, false]).unwrap();
        assert_eq!(validate_edge_colouring(&pre.graph, &ec, 3), vec![]);
        let (red, blue) = line_image(&out, &ec);
        assert_eq!(validate_colouring(&out.graph, &red, &blue, 3).unwrap(), vec![]);
        assert_eq!(witness_edge_colouring(&out, &inst, &[true, true, true]), Err(GadgetError::NotSatisfying));
    }

    #[test]
    fn cliques_are_forced() {
        let out = build_line_gadget(&one_clause(), 3).unwrap();
        assert_eq!(check_clique_claim(&out), Vec::<String>::new());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(build_line_gadget(&one_clause(), 2), Err(GadgetError::DTooSmall { .. })));
        let dup = CnfInstance { n_vars: 2, clauses: vec![vec![1, 2, 2]], flavour: Flavour::NaeAllPositive };
        assert!(matches!(build_line_gadget(&dup, 3), Err(GadgetError::Invalid(_))));
    }
}
