//! Colour-processing and the extra pruning rules layered on top of it.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::{Colour, PartialColouring};
use crate::graph::{Graph, Vertex};

/// The precoloured pair has no red-blue d-colouring extending it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Infeasible;

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("no d-colouring extends this precolouring")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessOrder {
    Ascending,
    Descending,
}

/// Forcing counts `(red, blue)` for `v`.
fn counts(g: &Graph, pc: &PartialColouring, v: Vertex) -> (usize, usize) {
    (g.degree_into(v, pc.red()), g.degree_into(v, pc.blue()))
}

fn any_doubly_forced(g: &Graph, pc: &PartialColouring, d: usize) -> bool {
    g.vertices().any(|v| {
        let (r, b) = counts(g, pc, v);
        r > d && b > d
    })
}

/// Colour-process `pc`: an uncoloured vertex with at least `d + 1` red
/// (blue) neighbours becomes red (blue), until nothing changes. Infeasible
/// when some vertex, coloured or not, ends up with `d + 1` neighbours of
/// each colour.
///
/// The result does not depend on the order rules fire in: a vertex can only
/// become forced both ways by having `d + 1` neighbours of each colour, and
/// that is caught by the final check whichever colour it got first.
pub fn colour_process(g: &Graph, pc: &PartialColouring, d: usize) -> Result<PartialColouring, Infeasible> {
    let n = g.n();
    let mut pc = pc.clone();
    let mut red = vec![0usize; n];
    let mut blue = vec![0usize; n];
    for v in 0..n {
        (red[v], blue[v]) = counts(g, &pc, v);
    }
    let mut queue: VecDeque<Vertex> = pc.uncoloured().ones().collect();
    while let Some(v) = queue.pop_front() {
        if pc.is_coloured(v) {
            continue;
        }
        let c = match (red[v] > d, blue[v] > d) {
            (true, true) => return Err(Infeasible),
            (true, false) => Colour::Red,
            (false, true) => Colour::Blue,
            (false, false) => continue,
        };
        pc.set(v, c);
        let tally = if c == Colour::Red { &mut red } else { &mut blue };
        for w in g.neighbours(v).ones() {
            tally[w] += 1;
            if tally[w] == d + 1 && !pc.is_coloured(w) {
                queue.push_back(w);
            }
        }
    }
    if (0..n).any(|v| red[v] > d && blue[v] > d) {
        return Err(Infeasible);
    }
    Ok(pc)
}

/// Literal fixed-point iteration of the same rules, sweeping vertices in
/// the given order; used to check order independence.
pub fn colour_process_ordered(
    g: &Graph,
    pc: &PartialColouring,
    d: usize,
    order: ProcessOrder,
) -> Result<PartialColouring, Infeasible> {
    let mut pc = pc.clone();
    let sweep: Vec<Vertex> = match order {
        ProcessOrder::Ascending => g.vertices().collect(),
        ProcessOrder::Descending => g.vertices().rev().collect(),
    };
    loop {
        let mut changed = false;
        for &v in &sweep {
            if pc.is_coloured(v) {
                continue;
            }
            let (r, b) = counts(g, &pc, v);
            if r > d && b > d {
                return Err(Infeasible);
            } else if r > d {
                pc.set(v, Colour::Red);
                changed = true;
            } else if b > d {
                pc.set(v, Colour::Blue);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if any_doubly_forced(g, &pc, d) {
        return Err(Infeasible);
    }
    Ok(pc)
}

/// A coloured vertex with more than `d` coloured neighbours of the other
/// colour, if any.
pub fn budget_violated(g: &Graph, pc: &PartialColouring, d: usize) -> Option<Vertex> {
    pc.coloured().ones().find(|&v| {
        let c = pc.colour(v).expect("coloured");
        g.degree_into(v, pc.class(c.opposite())) > d
    })
}

/// Which rules [`propagate`] applies besides colour-processing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rules {
    /// Reject states where a coloured vertex already exceeds its budget.
    pub budget: bool,
    /// A coloured vertex with exactly `d` opposite neighbours forces its
    /// uncoloured neighbours to its own colour.
    pub saturation: bool,
}

impl Rules {
    pub const PROCESS_ONLY: Rules = Rules { budget: false, saturation: false };
    pub const BUDGET: Rules = Rules { budget: true, saturation: false };
    pub const FULL: Rules = Rules { budget: true, saturation: true };
}

impl Default for Rules {
    fn default() -> Self {
        Rules::BUDGET
    }
}

/// Colour-process, then apply the enabled extra rules, to a fixed point.
pub fn propagate(
    g: &Graph,
    pc: &PartialColouring,
    d: usize,
    rules: Rules,
    tally: Option<&Tally>,
) -> Result<PartialColouring, Infeasible> {
    if let Some(t) = tally {
        t.propagation();
    }
    let mut pc = colour_process(g, pc, d)?;
    loop {
        if rules.budget && budget_violated(g, &pc, d).is_some() {
            return Err(Infeasible);
        }
        if !rules.saturation {
            return Ok(pc);
        }
        let mut forced = PartialColouring::new(g.n());
        for v in pc.coloured().ones() {
            let c = pc.colour(v).expect("coloured");
            if g.degree_into(v, pc.class(c.opposite())) < d {
                continue;
            }
            for w in g.neighbours(v).ones().filter(|&w| !pc.is_coloured(w)) {
                if forced.colour(w) == Some(c.opposite()) {
                    return Err(Infeasible);
                }
                forced.set(w, c);
            }
        }
        if forced.coloured().is_clear() {
            return Ok(pc);
        }
        for c in [Colour::Red, Colour::Blue] {
            pc.set_all(forced.class(c), c);
        }
        pc = colour_process(g, &pc, d)?;
    }
}

/// Search counters: branch nodes per named phase and propagation calls.
#[derive(Debug, Default)]
pub struct Tally {
    propagations: Cell<u64>,
    phases: RefCell<BTreeMap<&'static str, u64>>,
}

impl Tally {
    pub fn propagation(&self) {
        self.propagations.set(self.propagations.get() + 1);
    }

    pub fn branch(&self, phase: &'static str) {
        *self.phases.borrow_mut().entry(phase).or_default() += 1;
    }

    pub fn propagations(&self) -> u64 {
        self.propagations.get()
    }

    pub fn branches(&self) -> BTreeMap<String, u64> {
        self.phases.borrow().iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_centre_forced() {
        // centre 0, leaves 1..=5; three red leaves, d = 2
        let g = Graph::star(5);
        let pc = PartialColouring::from_sets(6, [1, 2, 3], []).unwrap();
        let out = colour_process(&g, &pc, 2).unwrap();
        assert_eq!(out.colour(0), Some(Colour::Red));
        assert_eq!(out.uncoloured().count_ones(..), 2);
    }

    #[test]
    fn doubly_forced_centre() {
        let g = Graph::star(6);
        let pc = PartialColouring::from_sets(7, [1, 2, 3], [4, 5, 6]).unwrap();
        assert_eq!(colour_process(&g, &pc, 2), Err(Infeasible));
        assert_eq!(colour_process_ordered(&g, &pc, 2, ProcessOrder::Descending), Err(Infeasible));
    }

    #[test]
    fn fixpoint_unchanged() {
        let g = Graph::cycle(6);
        let pc = PartialColouring::from_sets(6, [0], [3]).unwrap();
        let out = colour_process(&g, &pc, 1).unwrap();
        assert_eq!(out, pc);
        assert!(out.is_colour_processed(&g, 1));
    }

    #[test]
    fn clique_collapses() {
        // K5 with d = 2: three red vertices force the other two
        let g = Graph::complete(5);
        let pc = PartialColouring::from_sets(5, [0, 1, 2], []).unwrap();
        let out = colour_process(&g, &pc, 2).unwrap();
        assert_eq!(out.red().count_ones(..), 5);
    }

    #[test]
    fn budget_and_saturation() {
        let g = Graph::star(3);
        let pc = PartialColouring::from_sets(4, [0], [1, 2]).unwrap();
        assert_eq!(budget_violated(&g, &pc, 1), Some(0));
        assert!(propagate(&g, &pc, 1, Rules::BUDGET, None).is_err());
        assert!(propagate(&g, &pc, 1, Rules::PROCESS_ONLY, None).is_ok());
        let pc = PartialColouring::from_sets(4, [0], [1]).unwrap();
        let out = propagate(&g, &pc, 1, Rules::FULL, None).unwrap();
        assert_eq!(out.colour(2), Some(Colour::Red));
        assert_eq!(out.colour(3), Some(Colour::Red));
    }
}
