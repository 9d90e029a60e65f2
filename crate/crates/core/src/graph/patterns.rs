//! Small fixed patterns (at most 7 vertices) and induced-copy search.
//!
//! A pattern is a disjoint union of paths, stars and cycles, which covers
//! every name the solvers and the CLI need: `P5`, `K1,3` (`claw`), `C5`,
//! `3P2`, `P3+P4`, `P5+2P1` and so on.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError, Vertex, VertexSet};

pub const MAX_PATTERN_VERTICES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Piece {
    Path(usize),
    Star(usize),
    Cycle(usize),
}

impl Piece {
    fn order(self) -> usize {
        match self {
            Piece::Path(t) => t,
            Piece::Star(r) => r + 1,
            Piece::Cycle(r) => r,
        }
    }

    fn graph(self) -> Graph {
        match self {
            Piece::Path(t) => Graph::path(t),
            Piece::Star(r) => Graph::star(r),
            Piece::Cycle(r) => Graph::cycle(r),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Path(t) => write!(f, "P{t}"),
            Piece::Star(r) => write!(f, "K1,{r}"),
            Piece::Cycle(r) => write!(f, "C{r}"),
        }
    }
}

/// A named pattern graph: a disjoint union of paths, stars and cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternId {
    parts: Vec<(usize, Piece)>,
}

impl PatternId {
    fn single(piece: Piece) -> Self {
        PatternId { parts: vec![(1, piece)] }
    }

    /// `P_t`, `1 ≤ t ≤ 7`.
    pub fn path(t: usize) -> Self {
        assert!((1..=MAX_PATTERN_VERTICES).contains(&t));
        Self::single(Piece::Path(t))
    }

    /// `K_{1,r}`, `1 ≤ r ≤ 4`.
    pub fn star(r: usize) -> Self {
        assert!((1..=4).contains(&r));
        Self::single(Piece::Star(r))
    }

    pub fn claw() -> Self {
        Self::star(3)
    }

    /// `C_r`, `3 ≤ r ≤ 7`.
    pub fn cycle(r: usize) -> Self {
        assert!((3..=MAX_PATTERN_VERTICES).contains(&r));
        Self::single(Piece::Cycle(r))
    }

    pub fn three_p2() -> Self {
        PatternId { parts: vec![(3, Piece::Path(2))] }
    }

    pub fn p3_plus_p4() -> Self {
        PatternId { parts: vec![(1, Piece::Path(3)), (1, Piece::Path(4))] }
    }

    /// This pattern plus `s` isolated vertices.
    pub fn plus_isolated(&self, s: usize) -> Self {
        let mut parts = self.parts.clone();
        if s > 0 {
            parts.push((s, Piece::Path(1)));
        }
        let p = PatternId { parts };
        assert!(p.order() <= MAX_PATTERN_VERTICES, "pattern {p} is too large");
        p
    }

    pub fn order(&self) -> usize {
        self.parts.iter().map(|&(k, p)| k * p.order()).sum()
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::empty(0);
        for &(k, piece) in &self.parts {
            for _ in 0..k {
                g = g.disjoint_union(&piece.graph());
            }
        }
        g
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, piece)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if *k > 1 {
                write!(f, "{k}")?;
            }
            write!(f, "{piece}")?;
        }
        Ok(())
    }
}

impl FromStr for PatternId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let unknown = || GraphError::UnknownPattern(s.to_string());
        let mut parts = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let k: usize = if digits == 0 { 1 } else { term[..digits].parse().map_err(|_| unknown())? };
            let body = term[digits..].to_ascii_uppercase();
            let piece = if body == "CLAW" {
                Piece::Star(3)
            } else if let Some(rest) = body.strip_prefix("K1,").or_else(|| body.strip_prefix("K1_")) {
                Piece::Star(rest.parse().map_err(|_| unknown())?)
            } else if let Some(rest) = body.strip_prefix('P') {
                Piece::Path(rest.parse().map_err(|_| unknown())?)
            } else if let Some(rest) = body.strip_prefix('C') {
                Piece::Cycle(rest.parse().map_err(|_| unknown())?)
            } else {
                return Err(unknown());
            };
            let ok = match piece {
                Piece::Path(t) => t >= 1,
                Piece::Star(r) => (1..=4).contains(&r),
                Piece::Cycle(r) => r >= 3,
            };
            if !ok || k == 0 {
                return Err(unknown());
            }
            parts.push((k, piece));
        }
        let p = PatternId { parts };
        if p.order() == 0 || p.order() > MAX_PATTERN_VERTICES {
            return Err(unknown());
        }
        Ok(p)
    }
}

/// Pattern vertices reordered so that, inside each component, every vertex
/// after the first has an earlier neighbour.
fn search_order(h: &Graph) -> Vec<Vertex> {
    let mut order = Vec::with_capacity(h.n());
    let mut placed = vec![false; h.n()];
    for s in 0..h.n() {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            for w in h.neighbours(order[i]).ones() {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<Vertex>,
    image: Vec<Vertex>,
    used: VertexSet,
}

impl Matcher<'_> {
    fn new<'a>(g: &'a Graph, h: &'a Graph) -> Matcher<'a> {
        Matcher { g, h, order: search_order(h), image: vec![usize::MAX; h.n()], used: VertexSet::with_capacity(g.n()) }
    }

    fn candidates(&self, depth: usize) -> VertexSet {
        let p = self.order[depth];
        let mut cand = super::full_set(self.g.n());
        cand.difference_with(&self.used);
        for &q in &self.order[..depth] {
            let nb = self.g.neighbours(self.image[q]);
            if self.h.has_edge(p, q) {
                cand.intersect_with(nb);
            } else {
                cand.difference_with(nb);
            }
        }
        let need = self.h.degree(p);
        let mut out = VertexSet::with_capacity(self.g.n());
        for v in cand.ones() {
            if self.g.degree(v) >= need {
                out.insert(v);
            }
        }
        out
    }

    /// Visit every induced embedding; stop when `visit` returns false.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let p = self.order[depth];
        for v in self.candidates(depth).ones() {
            self.image[p] = v;
            self.used.insert(v);
            let go_on = self.run(depth + 1, visit);
            self.used.set(v, false);
            if !go_on {
                return false;
            }
        }
        self.image[p] = usize::MAX;
        true
    }
}

/// An induced copy of `h` in `g`, as the tuple of host vertices matched to
/// pattern vertices `0..|h|` (see [`PatternId::graph`] for the labelling).
pub fn find_induced(g: &Graph, h: &PatternId) -> Option<Vec<Vertex>> {
    find_induced_graph(g, &h.graph())
}

/// As [`find_induced`] for an arbitrary small pattern graph.
pub fn find_induced_graph(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    if h.n() > g.n() {
        return None;
    }
    let mut found = None;
    Matcher::new(g, h).run(0, &mut |img| {
        found = Some(img.to_vec());
        false
    });
    found
}

/// One embedding per vertex set inducing `h`, in the order the search meets
/// them (lowest host vertices first).
pub fn induced_copies(g: &Graph, h: &PatternId) -> Vec<Vec<Vertex>> {
    let hg = h.graph();
    if hg.n() > g.n() {
        return Vec::new();
    }
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut out = Vec::new();
    Matcher::new(g, &hg).run(0, &mut |img| {
        let mut key = img.to_vec();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(img.to_vec());
        }
        true
    });
    out
}
