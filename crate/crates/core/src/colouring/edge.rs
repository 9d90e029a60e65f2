//! Red-blue edge d-colourings, checked and searched directly on the edges
//! (not through the line graph, so the two routes stay independent).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Colour, ColouringError};
use crate::graph::{Graph, Vertex};

/// A colour per edge, keyed by `(u, v)` with `u < v`. Serialized as a map
/// from `"u-v"` strings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BTreeMap<String, Colour>", try_from = "BTreeMap<String, Colour>")]
pub struct EdgeColouring {
    pub colours: BTreeMap<(Vertex, Vertex), Colour>,
}

impl EdgeColouring {
    pub fn set(&mut self, u: Vertex, v: Vertex, c: Colour) {
        self.colours.insert((u.min(v), u.max(v)), c);
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<Colour> {
        self.colours.get(&(u.min(v), u.max(v))).copied()
    }
}

impl From<EdgeColouring> for BTreeMap<String, Colour> {
    fn from(ec: EdgeColouring) -> Self {
        ec.colours.into_iter().map(|((u, v), c)| (format!("{u}-{v}"), c)).collect()
    }
}

impl TryFrom<BTreeMap<String, Colour>> for EdgeColouring {
    type Error = String;

    fn try_from(map: BTreeMap<String, Colour>) -> Result<Self, String> {
        let mut ec = EdgeColouring::default();
        for (key, c) in map {
            let (a, b) = key.split_once('-').ok_or_else(|| format!("bad edge key {key:?}"))?;
            let u: Vertex = a.parse().map_err(|_| format!("bad edge key {key:?}"))?;
            let v: Vertex = b.parse().map_err(|_| format!("bad edge key {key:?}"))?;
            if u >= v {
                return Err(format!("edge key {key:?} must have u < v"));
            }
            ec.colours.insert((u, v), c);
        }
        Ok(ec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeViolation {
    Uncoloured(Vertex, Vertex),
    NotAnEdge(Vertex, Vertex),
    TooManyOpposite { edge: (Vertex, Vertex), colour: Colour, count: usize },
    ColourUnused(Colour),
}

impl fmt::Display for EdgeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeViolation::Uncoloured(u, v) => write!(f, "edge {u}-{v} has no colour"),
            EdgeViolation::NotAnEdge(u, v) => write!(f, "{u}-{v} is not an edge"),
            EdgeViolation::TooManyOpposite { edge: (u, v), colour, count } => {
                write!(f, "{colour} edge {u}-{v} touches {count} {} edges", colour.opposite())
            }
            EdgeViolation::ColourUnused(c) => write!(f, "colour {c} is unused"),
        }
    }
}

/// Every way `ec` fails to be a red-blue edge d-colouring of `g`.
pub fn validate_edge_colouring(g: &Graph, ec: &EdgeColouring, d: usize) -> Vec<EdgeViolation> {
    let mut out = Vec::new();
    for &(u, v) in ec.colours.keys() {
        if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
            out.push(EdgeViolation::NotAnEdge(u, v));
        }
    }
    let mut at = [vec![0usize; g.n()], vec![0usize; g.n()]];
    for (u, v) in g.edges() {
        match ec.get(u, v) {
            None => out.push(EdgeViolation::Uncoloured(u, v)),
            Some(c) => {
                at[c as usize][u] += 1;
                at[c as usize][v] += 1;
            }
        }
    }
    for (u, v) in g.edges() {
        if let Some(c) = ec.get(u, v) {
            let o = c.opposite() as usize;
            let count = at[o][u] + at[o][v];
            if count > d {
                out.push(EdgeViolation::TooManyOpposite { edge: (u, v), colour: c, count });
            }
        }
    }
    for c in [Colour::Red, Colour::Blue] {
        if !g.edges().any(|(u, v)| ec.get(u, v) == Some(c)) {
            out.push(EdgeViolation::ColourUnused(c));
        }
    }
    out
}

struct EdgeSearch<'a> {
    edges: Vec<(Vertex, Vertex)>,
    incident: Vec<Vec<usize>>,
    colour: Vec<Option<Colour>>,
    at: [Vec<usize>; 2],
    d: usize,
    _g: &'a Graph,
}

impl EdgeSearch<'_> {
    fn opposite_count(&self, e: usize) -> usize {
        let (u, v) = self.edges[e];
        let o = self.colour[e].expect("coloured").opposite() as usize;
        self.at[o][u] + self.at[o][v]
    }

    fn consistent_after(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        self.opposite_count(e) <= self.d
            && self.incident[u]
                .iter()
                .chain(&self.incident[v])
                .all(|&f| self.colour[f].is_none() || self.opposite_count(f) <= self.d)
    }

    fn dfs(&mut self, i: usize) -> bool {
        if i == self.edges.len() {
            return self.colour.contains(&Some(Colour::Red)) && self.colour.contains(&Some(Colour::Blue));
        }
        let options: &[Colour] = if i == 0 { &[Colour::Red] } else { &[Colour::Red, Colour::Blue] };
        let (u, v) = self.edges[i];
        for &c in options {
            self.colour[i] = Some(c);
            self.at[c as usize][u] += 1;
            self.at[c as usize][v] += 1;
            if self.consistent_after(i) && self.dfs(i + 1) {
                return true;
            }
            self.at[c as usize][u] -= 1;
            self.at[c as usize][v] -= 1;
            self.colour[i] = None;
        }
        false
    }
}

/// Edges ordered so each one after the first in its component shares an
/// endpoint with an earlier one.
fn connected_edge_order(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let mut seen_vertex = vec![false; g.n()];
    let mut taken = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(g.m());
    for s in g.vertices() {
        if seen_vertex[s] {
            continue;
        }
        seen_vertex[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbours(u).ones() {
                if taken.insert((u.min(w), u.max(w))) {
                    out.push((u.min(w), u.max(w)));
                }
                if !seen_vertex[w] {
                    seen_vertex[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

/// Exhaustive search for a red-blue edge d-colouring, rejecting graphs with
/// more than `guard` edges (`None`: no guard).
pub fn edge_oracle_solve_with(
    g: &Graph,
    d: usize,
    guard: Option<usize>,
) -> Result<Option<EdgeColouring>, ColouringError> {
    if d == 0 {
        return Err(ColouringError::ZeroD);
    }
    if let Some(guard) = guard {
        if g.m() > guard {
            return Err(ColouringError::GuardExceeded { size: g.m(), guard });
        }
    }
    let edges = connected_edge_order(g);
    let mut incident = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut s =
        EdgeSearch { colour: vec![None; edges.len()], edges, incident, at: [vec![0; g.n()], vec![0; g.n()]], d, _g: g };
    if !s.dfs(0) {
        return Ok(None);
    }
    let mut ec = EdgeColouring::default();
    for (i, &(u, v)) in s.edges.iter().enumerate() {
        ec.set(u, v, s.colour[i].expect("complete"));
    }
    let problems = validate_edge_colouring(g, &ec, d);
    assert!(problems.is_empty(), "edge oracle produced an invalid colouring: {problems:?}");
    Ok(Some(ec))
}

pub fn edge_oracle_solve(g: &Graph, d: usize) -> Result<Option<EdgeColouring>, ColouringError> {
    edge_oracle_solve_with(g, d, Some(super::DEFAULT_GUARD))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let ec = edge_oracle_solve(&Graph::path(3), 1).unwrap().unwrap();
        assert!(validate_edge_colouring(&Graph::path(3), &ec, 1).is_empty());
        assert_eq!(edge_oracle_solve(&Graph::star(3), 1).unwrap(), None);
        assert_eq!(edge_oracle_solve(&Graph::path(2), 1).unwrap(), None);
    }

    #[test]
    fn validator_reports() {
        let g = Graph::star(3);
        let mut ec = EdgeColouring::default();
        ec.set(0, 1, Colour::Red);
        ec.set(0, 2, Colour::Blue);
        let v = validate_edge_colouring(&g, &ec, 1);
        assert!(v.contains(&EdgeViolation::Uncoloured(0, 3)));
        ec.set(0, 3, Colour::Blue);
        ec.set(1, 2, Colour::Red);
        let v = validate_edge_colouring(&g, &ec, 1);
        assert!(v.contains(&EdgeViolation::NotAnEdge(1, 2)));
        assert!(v.contains(&EdgeViolation::TooManyOpposite { edge: (0, 1), colour: Colour::Red, count: 2 }));
    }

    #[test]
    fn json_keys() {
        let mut ec = EdgeColouring::default();
        ec.set(2, 0, Colour::Red);
        ec.set(1, 2, Colour::Blue);
        let s = serde_json::to_string(&ec).unwrap();
        assert_eq!(s, r#"{"0-2":"red","1-2":"blue"}"#);
        assert_eq!(serde_json::from_str::<EdgeColouring>(&s).unwrap(), ec);
        assert!(serde_json::from_str::<EdgeColouring>(r#"{"2-0":"red"}"#).is_err());
    }
}
