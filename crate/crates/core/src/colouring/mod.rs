//! Red-blue colourings: partial states, validation, certificates, and the
//! propagation and search machinery shared by every solver.

mod domset;
mod edge;
mod extend;
mod oracle;
mod process;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{components_within, vertex_set, Graph, Vertex, VertexSet};

pub use domset::solve_with_dominating_set;
pub use edge::{edge_oracle_solve, edge_oracle_solve_with, validate_edge_colouring, EdgeColouring, EdgeViolation};
pub use extend::{extend_budgeted, Extensions};
pub use oracle::{oracle_solve, oracle_solve_with, OracleConfig, OracleOutcome, DEFAULT_GUARD};
pub use process::{
    budget_violated, colour_process, colour_process_ordered, propagate, Infeasible, ProcessOrder, Rules, Tally,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn opposite(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("vertex {0} is both red and blue")]
    Overlap(Vertex),
    #[error("vertex {0} is neither red nor blue")]
    Uncovered(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("instance size {size} exceeds the exhaustive-search guard {guard}")]
    GuardExceeded { size: usize, guard: usize },
    #[error("the given set does not dominate the graph (vertex {0} is undominated)")]
    NotDominating(Vertex),
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("removing the given edges leaves {components} components, not two sides")]
    NotACut { components: usize },
    #[error("invalid d-colouring: {}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("d must be at least 1")]
    ZeroD,
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// One reason a full colouring is not a red-blue d-colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `vertex` (of colour `colour`) has `count > d` neighbours of the other colour.
    TooManyOpposite {
        vertex: Vertex,
        colour: Colour,
        count: usize,
    },
    ColourUnused {
        colour: Colour,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyOpposite { vertex, colour, count } => {
                write!(f, "{colour} vertex {vertex} has {count} {} neighbours", colour.opposite())
            }
            Violation::ColourUnused { colour } => write!(f, "colour {colour} is unused"),
        }
    }
}

/// Red, blue and (implicitly) uncoloured vertices of one graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialColouring {
    red: VertexSet,
    blue: VertexSet,
}

impl PartialColouring {
    /// Everything uncoloured.
    pub fn new(n: usize) -> Self {
        PartialColouring { red: VertexSet::with_capacity(n), blue: VertexSet::with_capacity(n) }
    }

    pub fn from_sets(
        n: usize,
        red: impl IntoIterator<Item = Vertex>,
        blue: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, ColouringError> {
        let mut pc = PartialColouring::new(n);
        for (c, vs) in [(Colour::Red, red.into_iter().collect::<Vec<_>>()), (Colour::Blue, blue.into_iter().collect())]
        {
            for v in vs {
                if v >= n {
                    return Err(ColouringError::OutOfRange { vertex: v, n });
                }
                if pc.colour(v) == Some(c.opposite()) {
                    return Err(ColouringError::Overlap(v));
                }
                pc.set(v, c);
            }
        }
        Ok(pc)
    }

    pub fn n(&self) -> usize {
        self.red.len()
    }

    pub fn red(&self) -> &VertexSet {
        &self.red
    }

    pub fn blue(&self) -> &VertexSet {
        &self.blue
    }

    pub fn class(&self, c: Colour) -> &VertexSet {
        match c {
            Colour::Red => &self.red,
            Colour::Blue => &self.blue,
        }
    }

    pub fn coloured(&self) -> VertexSet {
        let mut s = self.red.clone();
        s.union_with(&self.blue);
        s
    }

    pub fn uncoloured(&self) -> VertexSet {
        let mut s = self.coloured();
        s.toggle_range(..);
        s
    }

    pub fn colour(&self, v: Vertex) -> Option<Colour> {
        if self.red.contains(v) {
            Some(Colour::Red)
        } else if self.blue.contains(v) {
            Some(Colour::Blue)
        } else {
            None
        }
    }

    pub fn is_coloured(&self, v: Vertex) -> bool {
        self.red.contains(v) || self.blue.contains(v)
    }

    /// Colour `v` with `c`, overriding any previous colour.
    pub fn set(&mut self, v: Vertex, c: Colour) {
        let (this, other) = match c {
            Colour::Red => (&mut self.red, &mut self.blue),
            Colour::Blue => (&mut self.blue, &mut self.red),
        };
        other.set(v, false);
        this.insert(v);
    }

    /// Colour every vertex of `set` with `c`.
    pub fn set_all(&mut self, set: &VertexSet, c: Colour) {
        for v in set.ones() {
            self.set(v, c);
        }
    }

    pub fn is_complete(&self) -> bool {
        self.red.count_ones(..) + self.blue.count_ones(..) == self.n()
    }

    /// Colour-processed under `d`: no uncoloured vertex has more than `d`
    /// neighbours of one colour.
    pub fn is_colour_processed(&self, g: &Graph, d: usize) -> bool {
        self.uncoloured().ones().all(|v| g.degree_into(v, &self.red) <= d && g.degree_into(v, &self.blue) <= d)
    }

    /// Whether every coloured vertex of `self` has the same colour in `other`.
    pub fn is_extended_by(&self, other: &PartialColouring) -> bool {
        self.red.is_subset(&other.red) && self.blue.is_subset(&other.blue)
    }

    /// Certificate for a complete colouring, if it is a valid d-colouring.
    pub fn certificate(&self, g: &Graph, d: usize) -> Option<DCutCertificate> {
        if !self.is_complete() {
            return None;
        }
        cut_from_colouring(g, &self.red, &self.blue, d).ok()
    }
}

impl fmt::Debug for PartialColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartialColouring(red={:?}, blue={:?})",
            self.red.ones().collect::<Vec<_>>(),
            self.blue.ones().collect::<Vec<_>>()
        )
    }
}

fn check_partition(g: &Graph, red: &VertexSet, blue: &VertexSet) -> Result<(), ColouringError> {
    let n = g.n();
    for v in red.ones().chain(blue.ones()) {
        if v >= n {
            return Err(ColouringError::OutOfRange { vertex: v, n });
        }
    }
    if let Some(v) = red.intersection(blue).next() {
        return Err(ColouringError::Overlap(v));
    }
    if let Some(v) = (0..n).find(|&v| !red.contains(v) && !blue.contains(v)) {
        return Err(ColouringError::Uncovered(v));
    }
    Ok(())
}

/// Every way `(red, blue)` fails to be a red-blue d-colouring of `g`; an
/// empty list means valid.
pub fn validate_colouring(
    g: &Graph,
    red: &VertexSet,
    blue: &VertexSet,
    d: usize,
) -> Result<Vec<Violation>, ColouringError> {
    check_partition(g, red, blue)?;
    let mut out = Vec::new();
    for v in g.vertices() {
        let (colour, other) = if red.contains(v) { (Colour::Red, blue) } else { (Colour::Blue, red) };
        let count = g.degree_into(v, other);
        if count > d {
            out.push(Violation::TooManyOpposite { vertex: v, colour, count });
        }
    }
    for (colour, set) in [(Colour::Red, red), (Colour::Blue, blue)] {
        if set.is_clear() {
            out.push(Violation::ColourUnused { colour });
        }
    }
    Ok(out)
}

/// A d-cut with its two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DCutCertificate {
    pub d: usize,
    pub red: Vec<Vertex>,
    pub blue: Vec<Vertex>,
    pub cut_edges: Vec<(Vertex, Vertex)>,
}

/// Anything wrong with a certificate relative to a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateIssue {
    Partition(ColouringError),
    Colouring(Violation),
    MissingCutEdge(Vertex, Vertex),
    ExtraCutEdge(Vertex, Vertex),
}

impl fmt::Display for CertificateIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateIssue::Partition(e) => write!(f, "{e}"),
            CertificateIssue::Colouring(v) => write!(f, "{v}"),
            CertificateIssue::MissingCutEdge(u, v) => write!(f, "cut edge ({u}, {v}) is missing from cut_edges"),
            CertificateIssue::ExtraCutEdge(u, v) => {
                write!(f, "({u}, {v}) is listed in cut_edges but is not a bichromatic edge")
            }
        }
    }
}

impl DCutCertificate {
    pub fn red_set(&self, n: usize) -> VertexSet {
        vertex_set(n, self.red.iter().copied().filter(|&v| v < n))
    }

    pub fn blue_set(&self, n: usize) -> VertexSet {
        vertex_set(n, self.blue.iter().copied().filter(|&v| v < n))
    }

    /// Every problem with this certificate as a d-cut of `g`; empty means valid.
    pub fn check(&self, g: &Graph) -> Vec<CertificateIssue> {
        let n = g.n();
        if let Some(&v) = self.red.iter().chain(&self.blue).find(|&&v| v >= n) {
            return vec![CertificateIssue::Partition(ColouringError::OutOfRange { vertex: v, n })];
        }
        let mut seen = VertexSet::with_capacity(n);
        for &v in self.red.iter().chain(&self.blue) {
            if seen.put(v) {
                return vec![CertificateIssue::Partition(ColouringError::Overlap(v))];
            }
        }
        let (red, blue) = (self.red_set(n), self.blue_set(n));
        let violations = match validate_colouring(g, &red, &blue, self.d) {
            Ok(v) => v,
            Err(e) => return vec![CertificateIssue::Partition(e)],
        };
        let mut out: Vec<_> = violations.into_iter().map(CertificateIssue::Colouring).collect();
        let actual: BTreeSet<_> = bichromatic_edges(g, &red).into_iter().collect();
        let listed: BTreeSet<_> = self.cut_edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for &(u, v) in actual.difference(&listed) {
            out.push(CertificateIssue::MissingCutEdge(u, v));
        }
        for &(u, v) in listed.difference(&actual) {
            out.push(CertificateIssue::ExtraCutEdge(u, v));
        }
        out
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.check(g).is_empty()
    }

    /// Panics unless the certificate is valid for `g` and `d`. Every solver
    /// calls this before returning a certificate.
    pub fn assert_valid(&self, g: &Graph, d: usize) {
        assert_eq!(self.d, d, "certificate carries the wrong d");
        let issues = self.check(g);
        assert!(issues.is_empty(), "invalid certificate {self:?}: {}", list(&issues));
    }
}

fn bichromatic_edges(g: &Graph, red: &VertexSet) -> Vec<(Vertex, Vertex)> {
    g.edges().filter(|&(u, v)| red.contains(u) != red.contains(v)).collect()
}

/// The d-cut of a valid red-blue d-colouring.
pub fn cut_from_colouring(
    g: &Graph,
    red: &VertexSet,
    blue: &VertexSet,
    d: usize,
) -> Result<DCutCertificate, ColouringError> {
    let violations = validate_colouring(g, red, blue, d)?;
    if !violations.is_empty() {
        return Err(ColouringError::Invalid(violations));
    }
    Ok(DCutCertificate {
        d,
        red: red.ones().collect(),
        blue: blue.ones().collect(),
        cut_edges: bichromatic_edges(g, red),
    })
}

/// The two sides of an edge cut `cut` of a connected graph. The side
/// holding vertex 0 is returned as red.
pub fn colouring_from_cut(
    g: &Graph,
    cut: &[(Vertex, Vertex)],
    d: usize,
) -> Result<(VertexSet, VertexSet), ColouringError> {
    let n = g.n();
    let mut removed = BTreeSet::new();
    for &(u, v) in cut {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return Err(ColouringError::NotAnEdge(u, v));
        }
        removed.insert((u.min(v), u.max(v)));
    }
    let rest = Graph::from_edges(n, g.edges().filter(|e| !removed.contains(e))).expect("subgraph of a valid graph");
    let comps = components_within(&rest, &crate::graph::full_set(n));
    if comps.len() != 2 {
        return Err(ColouringError::NotACut { components: comps.len() });
    }
    let (red, blue) = (comps[0].clone(), comps[1].clone());
    // every removed edge must actually cross
    if removed.iter().any(|&(u, v)| red.contains(u) == red.contains(v)) {
        return Err(ColouringError::NotACut { components: 2 });
    }
    let violations = validate_colouring(g, &red, &blue, d)?;
    if !violations.is_empty() {
        return Err(ColouringError::Invalid(violations));
    }
    Ok((red, blue))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[Vertex]) -> VertexSet {
        vertex_set(n, vs.iter().copied())
    }

    #[test]
    fn validate_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(validate_colouring(&c4, &set(4, &[0, 1]), &set(4, &[2, 3]), 1), Ok(vec![]));
        let k3 = Graph::complete(3);
        assert_eq!(
            validate_colouring(&k3, &set(3, &[0]), &set(3, &[1, 2]), 1),
            Ok(vec![Violation::TooManyOpposite { vertex: 0, colour: Colour::Red, count: 2 }])
        );
        let p = Graph::path(5);
        assert_eq!(
            validate_colouring(&p, &set(5, &[0, 1, 2, 3, 4]), &set(5, &[]), 2),
            Ok(vec![Violation::ColourUnused { colour: Colour::Blue }])
        );
        assert_eq!(
            validate_colouring(&p, &set(5, &[0, 1]), &set(5, &[1, 2, 3, 4]), 2),
            Err(ColouringError::Overlap(1))
        );
        assert_eq!(validate_colouring(&p, &set(5, &[0, 1]), &set(5, &[3, 4]), 2), Err(ColouringError::Uncovered(2)));
    }

    #[test]
    fn cut_examples() {
        let c4 = Graph::cycle(4);
        let cert = cut_from_colouring(&c4, &set(4, &[0, 1]), &set(4, &[2, 3]), 1).unwrap();
        assert_eq!(cert.cut_edges, vec![(0, 3), (1, 2)]);
        assert!(cert.is_valid_for(&c4));
        let p2 = Graph::path(2);
        let cert = cut_from_colouring(&p2, &set(2, &[0]), &set(2, &[1]), 1).unwrap();
        assert_eq!(cert.cut_edges, vec![(0, 1)]);

        let (r, b) = colouring_from_cut(&c4, &[(1, 2), (3, 0)], 1).unwrap();
        assert_eq!((r, b), (set(4, &[0, 1]), set(4, &[2, 3])));
        assert_eq!(colouring_from_cut(&c4, &[(1, 2)], 1), Err(ColouringError::NotACut { components: 1 }));
        assert_eq!(colouring_from_cut(&c4, &[(0, 2)], 1), Err(ColouringError::NotAnEdge(0, 2)));
        // cutting an extra edge inside one side is not a cut
        let k4 = Graph::complete(4);
        assert!(colouring_from_cut(&k4, &[(0, 2), (0, 3), (1, 2), (1, 3), (0, 1)], 3).is_err());
    }

    #[test]
    fn certificate_issues() {
        let c4 = Graph::cycle(4);
        let mut cert = cut_from_colouring(&c4, &set(4, &[0, 1]), &set(4, &[2, 3]), 1).unwrap();
        cert.cut_edges = vec![(0, 3), (0, 1)];
        let issues = cert.check(&c4);
        assert!(issues.contains(&CertificateIssue::MissingCutEdge(1, 2)));
        assert!(issues.contains(&CertificateIssue::ExtraCutEdge(0, 1)));
        let json =
            serde_json::to_string(&cut_from_colouring(&c4, &set(4, &[0, 1]), &set(4, &[2, 3]), 1).unwrap()).unwrap();
        assert_eq!(json, r#"{"d":1,"red":[0,1],"blue":[2,3],"cut_edges":[[0,3],[1,2]]}"#);
    }

    #[test]
    fn partial_colouring_basics() {
        let mut pc = PartialColouring::from_sets(5, [0], [4]).unwrap();
        assert_eq!(pc.uncoloured().ones().collect::<Vec<_>>(), vec![1, 2, 3]);
        pc.set(0, Colour::Blue);
        assert_eq!(pc.colour(0), Some(Colour::Blue));
        assert!(!pc.red().contains(0));
        assert_eq!(PartialColouring::from_sets(3, [1], [1]), Err(ColouringError::Overlap(1)));
        assert!(PartialColouring::from_sets(3, [3], []).is_err());
    }
}
