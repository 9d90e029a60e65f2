//! BFS distances, eccentricities, diameter, radius and components.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Graph, Vertex, VertexSet};

/// Hop distance, with `Infinite` for vertices in different components.
/// Orders as `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Finite(usize),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dist::Finite(k) => Some(k),
            Dist::Infinite => None,
        }
    }

    pub fn is_at_most(self, k: usize) -> bool {
        matches!(self, Dist::Finite(x) if x <= k)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(k) => write!(f, "{k}"),
            Dist::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(k) => s.serialize_u64(*k as u64),
            Dist::Infinite => s.serialize_str("inf"),
        }
    }
}

const UNREACHED: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    cells: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Dist {
        match self.cells[u * self.n + v] {
            UNREACHED => Dist::Infinite,
            k => Dist::Finite(k as usize),
        }
    }

    pub fn eccentricity(&self, v: Vertex) -> Dist {
        (0..self.n).map(|u| self.get(v, u)).max().unwrap_or(Dist::Finite(0))
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.n).map(|u| (0..self.n).map(|v| self.get(u, v).to_string()).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// BFS from `source` inside the subgraph induced by `within`; returns hop
/// counts (`UNREACHED` outside the reached part).
fn bfs(g: &Graph, source: Vertex, within: Option<&VertexSet>, out: &mut [u32]) {
    out.fill(UNREACHED);
    out[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbours(u).ones() {
            if out[w] == UNREACHED && within.is_none_or(|s| s.contains(w)) {
                out[w] = out[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

pub fn distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut cells = vec![UNREACHED; n * n];
    for (v, row) in cells.chunks_mut(n.max(1)).enumerate().take(n) {
        bfs(g, v, None, row);
    }
    DistanceMatrix { n, cells }
}

/// Distances from one vertex, restricted to `within` (which must contain it).
pub fn distances_from_within(g: &Graph, source: Vertex, within: &VertexSet) -> Vec<Dist> {
    let mut row = vec![UNREACHED; g.n()];
    bfs(g, source, Some(within), &mut row);
    row.into_iter().map(|k| if k == UNREACHED { Dist::Infinite } else { Dist::Finite(k as usize) }).collect()
}

pub fn eccentricities(g: &Graph) -> Vec<Dist> {
    let dm = distances(g);
    (0..g.n()).map(|v| dm.eccentricity(v)).collect()
}

/// Largest eccentricity; `Finite(0)` for graphs with at most one vertex.
pub fn diameter(g: &Graph) -> Dist {
    eccentricities(g).into_iter().max().unwrap_or(Dist::Finite(0))
}

/// Smallest eccentricity; `Finite(0)` for the empty graph.
pub fn radius(g: &Graph) -> Dist {
    eccentricities(g).into_iter().min().unwrap_or(Dist::Finite(0))
}

/// Components as sorted vertex lists, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    components_within(g, &super::full_set(g.n())).into_iter().map(|c| c.ones().collect()).collect()
}

/// Components of `G[within]`, ordered by smallest member.
pub fn components_within(g: &Graph, within: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::with_capacity(g.n());
    let mut out = Vec::new();
    for s in within.ones() {
        if seen.contains(s) {
            continue;
        }
        let mut comp = VertexSet::with_capacity(g.n());
        comp.insert(s);
        seen.insert(s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbours(u).ones() {
                if within.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}
