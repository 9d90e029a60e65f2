//! Restricted 3-SAT to d-Cut on 3P2-free graphs.
//!
//! Clique K holds a vertex per positive clause plus an apex C, clique K' a
//! vertex per negative clause plus an apex D, and I is an independent set of
//! variable vertices, each adjacent to the clauses it occurs in. C and D are
//! adjacent. For d >= 3 each variable x_h also gets sets L_h (in K) and L'_h
//! (in K') of d-3 vertices, complete to x_h, and K\{C}, K'\{D} are joined by
//! a circulant bipartite pattern of degree d-2.

use serde::Serialize;

use super::{check_assignment, check_input, CnfInstance, Flavour, GadgetError, GadgetKind, GadgetOutput, Role};
use crate::colouring::DCutCertificate;
use crate::graph::{diameter, find_induced, radius, vertex_set, Dist, Graph, PatternId, Vertex, VertexSet};

struct Layout {
    /// K without C: positive clauses then the L_h, in that order.
    k: Vec<Vertex>,
    c: Vertex,
    k2: Vec<Vertex>,
    dv: Vertex,
    x: Vec<Vertex>,
}

pub fn build_3p2_gadget(inst: &CnfInstance, d: usize) -> Result<GadgetOutput, GadgetError> {
    check_input(inst, Flavour::SplitPosNeg, d, 2)?;
    let n = inst.n_vars;
    let pos: Vec<_> = inst.positive_clauses().collect();
    let neg: Vec<_> = inst.negative_clauses().collect();
    let extra = d.saturating_sub(3);

    let mut roles = Vec::new();
    let mut add = |role: &str, index: Vec<usize>| {
        let v = roles.len();
        roles.push(Role::new(v, role, index));
        v
    };
    let mut k: Vec<_> = (0..pos.len()).map(|i| add("K", vec![i])).collect();
    let c = add("C", vec![]);
    let mut k2: Vec<_> = (0..neg.len()).map(|j| add("K'", vec![j])).collect();
    let dv = add("D", vec![]);
    let x: Vec<_> = (0..n).map(|h| add("I", vec![h])).collect();
    let l: Vec<Vec<_>> = (0..n).map(|h| (0..extra).map(|t| add("L_h", vec![h, t])).collect()).collect();
    let l2: Vec<Vec<_>> = (0..n).map(|h| (0..extra).map(|t| add("L'_h", vec![h, t])).collect()).collect();
    k.extend(l.iter().flatten());
    k2.extend(l2.iter().flatten());
    let lay = Layout { k, c, k2, dv, x };

    let mut edges = Vec::new();
    for side in [(&lay.k, lay.c), (&lay.k2, lay.dv)] {
        let members: Vec<_> = side.0.iter().copied().chain([side.1]).collect();
        for (i, &u) in members.iter().enumerate() {
            edges.extend(members[i + 1..].iter().map(|&v| (u, v)));
        }
    }
    edges.push((lay.c, lay.dv));
    for (i, cl) in pos.iter().enumerate() {
        edges.extend(cl.iter().map(|&lit| (lay.k[i], lay.x[CnfInstance::var(lit)])));
    }
    for (j, cl) in neg.iter().enumerate() {
        edges.extend(cl.iter().map(|&lit| (lay.k2[j], lay.x[CnfInstance::var(lit)])));
    }
    for h in 0..n {
        edges.extend(l[h].iter().chain(&l2[h]).map(|&u| (u, lay.x[h])));
    }
    if d >= 3 {
        // p = q, so both sides have the same size s
        let s = lay.k.len();
        assert_eq!(s, lay.k2.len());
        for i in 0..s {
            edges.extend((0..d - 2).map(|t| (lay.k[i], lay.k2[(i + t) % s])));
        }
    }
    let g = Graph::from_edges(roles.len(), edges).expect("gadget edges are in range");
    certify(&g, d, &lay)?;
    Ok(GadgetOutput { kind: GadgetKind::ThreeP2Gadget, d, graph: g, roles, pre_line: None })
}

/// The class facts the reduction promises about its output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub connected: bool,
    pub three_p2: Option<Vec<Vertex>>,
    pub radius: Dist,
    pub diameter: Dist,
}

impl ClassCheck {
    pub fn of(g: &Graph) -> Self {
        ClassCheck {
            connected: g.is_connected(),
            three_p2: find_induced(g, &PatternId::three_p2()),
            radius: radius(g),
            diameter: diameter(g),
        }
    }

    /// Connected, 3P2-free, radius 2 and diameter at most 3.
    pub fn within_bounds(&self) -> bool {
        self.connected && self.three_p2.is_none() && self.radius == Dist::Finite(2) && self.diameter.is_at_most(3)
    }

    /// As above with diameter exactly 3. Fails when every two variables
    /// share a clause, which needs n <= 9.
    pub fn exact(&self) -> bool {
        self.within_bounds() && self.diameter == Dist::Finite(3)
    }
}

fn certify(g: &Graph, d: usize, lay: &Layout) -> Result<(), GadgetError> {
    let fail = |msg: String| Err(GadgetError::Certification(msg));
    if d >= 3 {
        let k2 = vertex_set(g.n(), lay.k2.iter().copied());
        let k = vertex_set(g.n(), lay.k.iter().copied());
        if let Some(&v) = lay.k.iter().find(|&&v| g.degree_into(v, &k2) != d - 2) {
            return fail(format!("K vertex {v} has {} neighbours across", g.degree_into(v, &k2)));
        }
        if let Some(&v) = lay.k2.iter().find(|&&v| g.degree_into(v, &k) != d - 2) {
            return fail(format!("K' vertex {v} has {} neighbours across", g.degree_into(v, &k)));
        }
    }
    let check = ClassCheck::of(g);
    if !check.within_bounds() {
        return fail(format!("{check:?}"));
    }
    Ok(())
}

/// K and its L sets red, K' and its L' sets blue, each variable vertex red
/// exactly when the variable is true.
pub fn witness_colouring_3p2(
    out: &GadgetOutput,
    inst: &CnfInstance,
    a: &[bool],
) -> Result<(VertexSet, VertexSet), GadgetError> {
    check_assignment(inst, a)?;
    let n = out.graph.n();
    let mut red = VertexSet::with_capacity(n);
    for r in &out.roles {
        let is_red = match r.role.as_str() {
            "K" | "C" | "L_h" => true,
            "I" => a[r.index[0]],
            _ => false,
        };
        red.set(r.vertex, is_red);
    }
    let mut blue = crate::graph::full_set(n);
    blue.difference_with(&red);
    Ok((red, blue))
}

/// Read an assignment off a d-cut of the gadget: a variable is true when
/// its vertex has C's colour.
pub(crate) fn assignment_from_cut(out: &GadgetOutput, cert: &DCutCertificate) -> Vec<bool> {
    let red = cert.red_set(out.graph.n());
    let c = out.with_role("C")[0];
    out.with_role("I").into_iter().map(|x| red.contains(x) == red.contains(c)).collect()
}
