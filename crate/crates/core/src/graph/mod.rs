//! Simple undirected graphs on vertices `0..n` with bitset adjacency.
//!
//! A [`Graph`] is immutable once built. Everything the solvers need from it
//! (neighbourhood intersections, domination checks, induced subgraphs) works
//! on [`VertexSet`] bitsets.

mod domination;
mod edgelist;
mod graph6;
mod line;
mod metrics;
mod patterns;

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use domination::{
    find_dominating_clique_or_c5, greedy_dominating_set, min_dominating_set, min_dominating_set_budgeted, DomSearch,
    DominatingKind, DominatingStructure,
};
pub use edgelist::{emit_edge_list, parse_edge_list};
pub use graph6::{emit_graph6, parse_graph6};
pub use line::line_graph;
pub use metrics::{
    components_within, connected_components, diameter, distances, distances_from_within, eccentricities, radius, Dist,
    DistanceMatrix,
};
pub use patterns::{find_induced, find_induced_graph, induced_copies, PatternId, MAX_PATTERN_VERTICES};

pub type Vertex = usize;

/// Set of vertices of one graph, indexed `0..n`.
pub type VertexSet = FixedBitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("unknown pattern name {0:?}")]
    UnknownPattern(String),
    #[error("no dominating clique or induced C5 found (input is not a connected P5-free graph)")]
    NotFound,
}

/// Build a [`VertexSet`] of capacity `n` holding `vertices`.
pub fn vertex_set(n: usize, vertices: impl IntoIterator<Item = Vertex>) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in vertices {
        s.insert(v);
    }
    s
}

/// All of `0..n`.
pub fn full_set(n: usize) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n], m: 0 }
    }

    /// Graph from an edge list. Repeated edges are merged; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v);
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    /// The star `K_{1,r}` with centre 0.
    pub fn star(r: usize) -> Self {
        Graph::from_edges(r + 1, (1..=r).map(|i| (0, i))).expect("star edges are valid")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("bipartite edges are valid")
    }

    /// Wheel on `rim + 1` vertices: a cycle `0..rim` plus hub `rim`.
    pub fn wheel(rim: usize) -> Self {
        let mut g = Graph::cycle(rim);
        g.add_vertex();
        for i in 0..rim {
            g.insert_edge(i, rim);
        }
        g
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("Petersen edges are valid")
    }

    fn add_vertex(&mut self) -> Vertex {
        let n = self.n() + 1;
        for row in &mut self.adj {
            row.grow(n);
        }
        self.adj.push(FixedBitSet::with_capacity(n));
        n - 1
    }

    /// Vertex-disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self.edges().chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.n(), edges).expect("union edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbours(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones(..)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of neighbours of `v` inside `set`.
    #[inline]
    pub fn degree_into(&self, v: Vertex, set: &VertexSet) -> usize {
        self.adj[v].intersection_count(set)
    }

    /// Open neighbourhood `N(S) = (⋃ N(u)) \ S`.
    pub fn neighbourhood_of(&self, set: &VertexSet) -> VertexSet {
        let mut out = FixedBitSet::with_capacity(self.n());
        for u in set.ones() {
            out.union_with(&self.adj[u]);
        }
        out.difference_with(set);
        out
    }

    /// Closed neighbourhood `N[S] = N(S) ∪ S`.
    pub fn closed_neighbourhood_of(&self, set: &VertexSet) -> VertexSet {
        let mut out = self.neighbourhood_of(set);
        out.union_with(set);
        out
    }

    /// Whether every vertex outside `set` has a neighbour in it.
    pub fn dominates(&self, set: &VertexSet) -> bool {
        self.closed_neighbourhood_of(set).count_ones(..) == self.n()
    }

    /// Whether `set` dominates the subgraph induced by `within` (`set ⊆ within`).
    pub fn dominates_within(&self, set: &VertexSet, within: &VertexSet) -> bool {
        let covered = self.closed_neighbourhood_of(set);
        within.is_subset(&covered)
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let k = set.count_ones(..);
        set.ones().all(|v| self.adj[v].intersection_count(set) == k - 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    /// Subgraph induced by `set`, relabelled to `0..|set|` in increasing
    /// vertex order. The returned map sends new labels to old ones.
    pub fn induced_subgraph(&self, set: &VertexSet) -> (Graph, Vec<Vertex>) {
        let map: Vec<Vertex> = set.ones().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].ones() {
                let j = index[w];
                if j != usize::MAX && j > i {
                    h.insert_edge(i, j);
                }
            }
        }
        (h, map)
    }

    /// [`Graph::induced_subgraph`] from a vertex list, rejecting out-of-range
    /// vertices.
    pub fn induced_by(&self, vertices: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        if let Some(&bad) = vertices.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n() });
        }
        Ok(self.induced_subgraph(&vertex_set(self.n(), vertices.iter().copied())))
    }

    /// Apply a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n());
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("relabelling preserves validity")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn symmetric_and_deduplicated() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.m(), 2);
        for (u, v) in g.edges() {
            assert!(g.has_edge(v, u));
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::complete(4);
        let (h, map) = k4.induced_by(&[3, 0, 2]).unwrap();
        assert_eq!(h, Graph::complete(3));
        assert_eq!(map, vec![0, 2, 3]);

        let c5 = Graph::cycle(5);
        let (h, _) = c5.induced_by(&[1, 2]).unwrap();
        assert_eq!(h, Graph::path(2));

        let (h, map) = c5.induced_by(&[]).unwrap();
        assert_eq!(h.n(), 0);
        assert!(map.is_empty());

        assert!(c5.induced_by(&[7]).is_err());
    }

    #[test]
    fn neighbourhoods_and_domination() {
        let p4 = Graph::path(4);
        let s = vertex_set(4, [1]);
        assert_eq!(p4.neighbourhood_of(&s).ones().collect::<Vec<_>>(), vec![0, 2]);
        assert!(!p4.dominates(&s));
        assert!(p4.dominates(&vertex_set(4, [1, 2])));
        assert!(p4.is_clique(&vertex_set(4, [1, 2])));
        assert!(!p4.is_clique(&vertex_set(4, [0, 2])));
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::petersen().m(), 15);
        assert!(Graph::petersen().vertices().all(|v| Graph::petersen().degree(v) == 3));
        assert_eq!(Graph::wheel(5).degree(5), 5);
        assert_eq!(Graph::star(4).degree(0), 4);
        assert_eq!(Graph::complete_bipartite(2, 3).m(), 6);
        let u = Graph::path(3).disjoint_union(&Graph::path(4));
        assert_eq!((u.n(), u.m()), (7, 5));
    }
}
