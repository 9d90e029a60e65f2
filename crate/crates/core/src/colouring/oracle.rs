//! Exhaustive search for red-blue d-colourings, with propagation at every
//! node. This is the reference every other solver is checked against.

use std::time::Instant;

use super::{ColouringError, DCutCertificate, PartialColouring};
use crate::graph::{Graph, Vertex, VertexSet};

/// Default largest instance the oracle accepts without an override.
pub const DEFAULT_GUARD: usize = 26;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Reject graphs with more vertices than this; `None` disables the guard.
    pub guard: Option<usize>,
    pub deadline: Option<Instant>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { guard: Some(DEFAULT_GUARD), deadline: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(DCutCertificate),
    NoCut,
    TimedOut,
}

const NONE: u8 = 2;

enum Step {
    Found,
    Exhausted,
    TimedOut,
}

struct Search<'a> {
    g: &'a Graph,
    d: u32,
    colour: Vec<u8>,
    count: [Vec<u32>; 2],
    used: [usize; 2],
    trail: Vec<Vertex>,
    deadline: Option<Instant>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, d: usize, deadline: Option<Instant>) -> Self {
        let n = g.n();
        Search {
            g,
            d: d as u32,
            colour: vec![NONE; n],
            count: [vec![0; n], vec![0; n]],
            used: [0, 0],
            trail: Vec::with_capacity(n),
            deadline,
            nodes: 0,
        }
    }

    fn assign(&mut self, v: Vertex, c: u8) {
        debug_assert_eq!(self.colour[v], NONE);
        self.colour[v] = c;
        self.used[c as usize] += 1;
        self.trail.push(v);
        for w in self.g.neighbours(v).ones() {
            self.count[c as usize][w] += 1;
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail longer than mark");
            let c = self.colour[v] as usize;
            for w in self.g.neighbours(v).ones() {
                self.count[c][w] -= 1;
            }
            self.used[c] -= 1;
            self.colour[v] = NONE;
        }
    }

    /// Colour every uncoloured neighbour of `v` with `c`.
    fn saturate(&mut self, v: Vertex, c: u8) {
        let g = self.g;
        for w in g.neighbours(v).ones() {
            if self.colour[w] == NONE {
                self.assign(w, c);
            }
        }
    }

    /// Process trail entries from `start` on: budgets, colour-processing,
    /// and saturation (a vertex at exactly `d` opposite neighbours keeps
    /// all its remaining neighbours on its own side). False on conflict.
    fn propagate(&mut self, start: usize) -> bool {
        let (g, d) = (self.g, self.d);
        let mut i = start;
        while i < self.trail.len() {
            let v = self.trail[i];
            i += 1;
            let c = self.colour[v];
            let o = 1 - c;
            let opp = self.count[o as usize][v];
            if opp > d {
                return false;
            }
            if opp == d {
                self.saturate(v, c);
            }
            for w in g.neighbours(v).ones() {
                let cw = self.colour[w];
                if cw == NONE {
                    if self.count[c as usize][w] > d {
                        if self.count[o as usize][w] > d {
                            return false;
                        }
                        self.assign(w, c);
                    }
                } else if cw != c {
                    let against = self.count[c as usize][w];
                    if against > d {
                        return false;
                    }
                    if against == d {
                        self.saturate(w, cw);
                    }
                }
            }
        }
        true
    }

    fn pick(&self) -> Option<Vertex> {
        let mut best: Option<(u32, Vertex)> = None;
        for v in 0..self.g.n() {
            if self.colour[v] == NONE {
                let k = self.count[0][v] + self.count[1][v];
                if best.is_none_or(|(bk, _)| k > bk) {
                    best = Some((k, v));
                }
            }
        }
        best.map(|(_, v)| v)
    }

    fn dfs(&mut self, symmetric: bool) -> Step {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|t| Instant::now() >= t) {
            return Step::TimedOut;
        }
        let Some(v) = self.pick() else {
            return if self.used[0] > 0 && self.used[1] > 0 { Step::Found } else { Step::Exhausted };
        };
        let colours: &[u8] = if symmetric { &[0] } else { &[0, 1] };
        for &c in colours {
            let mark = self.trail.len();
            self.assign(v, c);
            if self.propagate(mark) {
                match self.dfs(false) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Step::Exhausted
    }
}

/// Exhaustive search for a red-blue d-colouring of `g` extending `pc`.
pub fn oracle_solve_with(
    g: &Graph,
    d: usize,
    pc: Option<&PartialColouring>,
    cfg: &OracleConfig,
) -> Result<OracleOutcome, ColouringError> {
    if d == 0 {
        return Err(ColouringError::ZeroD);
    }
    if let Some(guard) = cfg.guard {
        if g.n() > guard {
            return Err(ColouringError::GuardExceeded { size: g.n(), guard });
        }
    }
    let mut s = Search::new(g, d, cfg.deadline);
    let mut symmetric = true;
    if let Some(pc) = pc {
        assert_eq!(pc.n(), g.n(), "precolouring is for a different graph");
        for v in pc.coloured().ones() {
            s.assign(v, if pc.red().contains(v) { 0 } else { 1 });
            symmetric = false;
        }
        if !s.propagate(0) {
            return Ok(OracleOutcome::NoCut);
        }
    }
    match s.dfs(symmetric) {
        Step::TimedOut => Ok(OracleOutcome::TimedOut),
        Step::Exhausted => Ok(OracleOutcome::NoCut),
        Step::Found => {
            let n = g.n();
            let red: VertexSet = crate::graph::vertex_set(n, (0..n).filter(|&v| s.colour[v] == 0));
            let blue: VertexSet = crate::graph::vertex_set(n, (0..n).filter(|&v| s.colour[v] == 1));
            let cert = super::cut_from_colouring(g, &red, &blue, d).expect("oracle leaf is a valid colouring");
            cert.assert_valid(g, d);
            Ok(OracleOutcome::Found(cert))
        }
    }
}

/// [`oracle_solve_with`] under the default guard and no deadline.
pub fn oracle_solve(
    g: &Graph,
    d: usize,
    pc: Option<&PartialColouring>,
) -> Result<Option<DCutCertificate>, ColouringError> {
    match oracle_solve_with(g, d, pc, &OracleConfig::default())? {
        OracleOutcome::Found(c) => Ok(Some(c)),
        OracleOutcome::NoCut => Ok(None),
        OracleOutcome::TimedOut => unreachable!("no deadline was set"),
    }
}
