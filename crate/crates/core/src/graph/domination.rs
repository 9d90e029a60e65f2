//! Dominating sets: exact minimum (capped), greedy, and the dominating
//! clique-or-C5 structure of connected P5-free graphs.

use serde::Serialize;

use super::{full_set, induced_copies, Graph, GraphError, PatternId, Vertex, VertexSet};

/// Smallest dominating set of `g` if its size is at most `cap`.
///
/// Iterative deepening on the size; inside one depth the search picks the
/// lowest undominated vertex and branches on which member of its closed
/// neighbourhood dominates it, so every set of the given size is covered.
pub fn min_dominating_set(g: &Graph, cap: usize) -> Option<VertexSet> {
    match min_dominating_set_budgeted(g, cap, u64::MAX) {
        DomSearch::Found(s) => Some(s),
        DomSearch::Exhausted => None,
        DomSearch::GaveUp => unreachable!("unbounded search"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomSearch {
    Found(VertexSet),
    /// No dominating set of size at most the cap.
    Exhausted,
    /// The node budget ran out first.
    GaveUp,
}

/// [`min_dominating_set`] that stops after visiting `max_nodes` search nodes.
pub fn min_dominating_set_budgeted(g: &Graph, cap: usize, max_nodes: u64) -> DomSearch {
    if g.n() == 0 {
        return DomSearch::Found(VertexSet::with_capacity(0));
    }
    let mut nodes = max_nodes;
    let mut chosen = Vec::new();
    for k in 1..=cap.min(g.n()) {
        match dominate(g, k, &full_set(g.n()), &mut chosen, &mut nodes) {
            Some(true) => return DomSearch::Found(super::vertex_set(g.n(), chosen.iter().copied())),
            Some(false) => {}
            None => return DomSearch::GaveUp,
        }
    }
    DomSearch::Exhausted
}

/// `None` when the node budget is spent.
fn dominate(
    g: &Graph,
    budget: usize,
    undominated: &VertexSet,
    chosen: &mut Vec<Vertex>,
    nodes: &mut u64,
) -> Option<bool> {
    let Some(u) = undominated.minimum() else {
        return Some(true);
    };
    if budget == 0 {
        return Some(false);
    }
    *nodes = nodes.checked_sub(1)?;
    // a cheap bound: one vertex covers at most Δ+1 others
    let left = undominated.count_ones(..);
    let best = g.vertices().map(|v| g.degree(v) + 1).max().unwrap_or(1);
    if left > budget * best {
        return Some(false);
    }
    let mut options: Vec<Vertex> = g.neighbours(u).ones().collect();
    options.push(u);
    options.sort_unstable();
    for v in options {
        let mut rest = undominated.clone();
        rest.set(v, false);
        rest.difference_with(g.neighbours(v));
        chosen.push(v);
        if dominate(g, budget - 1, &rest, chosen, nodes)? {
            return Some(true);
        }
        chosen.pop();
    }
    Some(false)
}

/// Greedy dominating set (largest newly-covered count, lowest index on ties).
pub fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let mut set = VertexSet::with_capacity(g.n());
    let mut undominated = full_set(g.n());
    while undominated.count_ones(..) > 0 {
        let gain = |v: Vertex| g.neighbours(v).intersection_count(&undominated) + usize::from(undominated.contains(v));
        let best = g.vertices().max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).expect("non-empty graph");
        set.insert(best);
        undominated.set(best, false);
        undominated.difference_with(g.neighbours(best));
    }
    set
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DominatingKind {
    Clique,
    C5,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingStructure {
    pub kind: DominatingKind,
    pub vertices: VertexSet,
}

impl DominatingStructure {
    fn check(&self, g: &Graph) -> bool {
        let shape = match self.kind {
            DominatingKind::Clique => g.is_clique(&self.vertices),
            DominatingKind::C5 => {
                let list: Vec<_> = self.vertices.ones().collect();
                list.len() == 5 && list.iter().all(|&v| g.degree_into(v, &self.vertices) == 2)
            }
        };
        shape && g.dominates(&self.vertices)
    }
}

/// Maximal cliques by Bron–Kerbosch with pivoting; `visit` returns false
/// to stop early.
fn maximal_cliques(g: &Graph, visit: &mut dyn FnMut(&VertexSet) -> bool) {
    fn bk(
        g: &Graph,
        r: &mut VertexSet,
        p: VertexSet,
        mut x: VertexSet,
        visit: &mut dyn FnMut(&VertexSet) -> bool,
    ) -> bool {
        if p.is_clear() {
            return !x.is_clear() || visit(r);
        }
        let pivot =
            p.ones().chain(x.ones()).max_by_key(|&u| g.neighbours(u).intersection_count(&p)).expect("p is non-empty");
        let mut todo = p.clone();
        todo.difference_with(g.neighbours(pivot));
        // larger-degree branches first, so big cliques around hubs come early
        let mut order: Vec<Vertex> = todo.ones().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut p = p;
        for v in order {
            let mut p2 = p.clone();
            p2.intersect_with(g.neighbours(v));
            let mut x2 = x.clone();
            x2.intersect_with(g.neighbours(v));
            r.insert(v);
            if !bk(g, r, p2, x2, visit) {
                return false;
            }
            r.set(v, false);
            p.set(v, false);
            x.insert(v);
        }
        true
    }
    let mut r = VertexSet::with_capacity(g.n());
    bk(g, &mut r, full_set(g.n()), VertexSet::with_capacity(g.n()), visit);
}

/// A dominating set inducing a clique or a 5-cycle. Every connected P5-free
/// graph has one; [`GraphError::NotFound`] means the input was not such a
/// graph. Dominating cliques are shrunk to a minimal dominating sub-clique.
pub fn find_dominating_clique_or_c5(g: &Graph) -> Result<DominatingStructure, GraphError> {
    let mut found: Option<VertexSet> = None;
    maximal_cliques(g, &mut |c| {
        if g.dominates(c) {
            found = Some(c.clone());
            false
        } else {
            true
        }
    });
    let out = if let Some(mut clique) = found {
        let members: Vec<_> = clique.ones().collect();
        for v in members.into_iter().rev() {
            clique.set(v, false);
            if clique.is_clear() || !g.dominates(&clique) {
                clique.insert(v);
            }
        }
        DominatingStructure { kind: DominatingKind::Clique, vertices: clique }
    } else {
        let c5 = induced_copies(g, &PatternId::cycle(5))
            .into_iter()
            .map(|c| super::vertex_set(g.n(), c))
            .find(|s| g.dominates(s))
            .ok_or(GraphError::NotFound)?;
        DominatingStructure { kind: DominatingKind::C5, vertices: c5 }
    };
    assert!(out.check(g), "dominating structure postcondition failed: {out:?}");
    Ok(out)
}
