//! Backtracking over colourings of a frontier set, with propagation after
//! every assignment. All "branch over every colouring of X" steps of the
//! solvers go through here.

use super::{propagate, Colour, PartialColouring, Rules, Tally};
use crate::graph::{Graph, Vertex, VertexSet};

/// Lazy depth-first enumeration; see [`extend_budgeted`].
pub struct Extensions<'a> {
    g: &'a Graph,
    d: usize,
    frontier: VertexSet,
    rules: Rules,
    tally: Option<(&'a Tally, &'static str)>,
    seed: Option<PartialColouring>,
    stack: Vec<PartialColouring>,
}

/// Every propagated extension of `pc` that colours all of `frontier`.
///
/// Propagation only fixes colours that all valid completions share, so each
/// valid full d-colouring extending `pc` extends exactly one yielded state.
/// Red is explored before blue.
pub fn extend_budgeted<'a>(g: &'a Graph, pc: &PartialColouring, frontier: &VertexSet, d: usize) -> Extensions<'a> {
    Extensions {
        g,
        d,
        frontier: frontier.clone(),
        rules: Rules::default(),
        tally: None,
        seed: Some(pc.clone()),
        stack: Vec::new(),
    }
}

impl<'a> Extensions<'a> {
    pub fn rules(mut self, rules: Rules) -> Self {
        self.rules = rules;
        self
    }

    /// Count every branch node under `phase`.
    pub fn tally(mut self, tally: &'a Tally, phase: &'static str) -> Self {
        self.tally = Some((tally, phase));
        self
    }

    fn settle(&self, pc: &PartialColouring) -> Option<PartialColouring> {
        propagate(self.g, pc, self.d, self.rules, self.tally.map(|(t, _)| t)).ok()
    }

    fn pick(&self, pc: &PartialColouring) -> Option<Vertex> {
        let coloured = pc.coloured();
        self.frontier
            .ones()
            .filter(|&v| !pc.is_coloured(v))
            .max_by_key(|&v| (self.g.degree_into(v, &coloured), std::cmp::Reverse(v)))
    }
}

impl Iterator for Extensions<'_> {
    type Item = PartialColouring;

    fn next(&mut self) -> Option<PartialColouring> {
        if let Some(seed) = self.seed.take() {
            if let Some(pc) = self.settle(&seed) {
                self.stack.push(pc);
            }
        }
        while let Some(pc) = self.stack.pop() {
            let Some(v) = self.pick(&pc) else {
                return Some(pc);
            };
            for c in [Colour::Blue, Colour::Red] {
                if let Some((t, phase)) = self.tally {
                    t.branch(phase);
                }
                let mut child = pc.clone();
                child.set(v, c);
                if let Some(child) = self.settle(&child) {
                    self.stack.push(child);
                }
            }
        }
        None
    }
}
