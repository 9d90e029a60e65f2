//! Solving d-Cut given a small dominating set.

use itertools::Itertools;

use super::{propagate, Colour, ColouringError, DCutCertificate, PartialColouring, Rules};
use crate::graph::{Graph, Vertex, VertexSet};

/// Decide d-Cut on `g` using a dominating set `dom`.
///
/// Every colouring of `dom` is tried. Then, for each member of `dom` in
/// ascending order, at most `d` of its still-uncoloured neighbours take the
/// opposite colour and the rest its own. Because `dom` dominates, this
/// colours everything; each completed colouring is validated.
pub fn solve_with_dominating_set(
    g: &Graph,
    dom: &VertexSet,
    d: usize,
) -> Result<Option<DCutCertificate>, ColouringError> {
    if d == 0 {
        return Err(ColouringError::ZeroD);
    }
    if let Some(v) = g.vertices().find(|&v| !g.closed_neighbourhood_of(dom).contains(v)) {
        return Err(ColouringError::NotDominating(v));
    }
    let members: Vec<Vertex> = dom.ones().collect();
    for mask in 0u64..(1u64 << members.len()) {
        let mut pc = PartialColouring::new(g.n());
        for (i, &u) in members.iter().enumerate() {
            pc.set(u, if mask >> i & 1 == 0 { Colour::Red } else { Colour::Blue });
        }
        let Ok(pc) = propagate(g, &pc, d, Rules::BUDGET, None) else {
            continue;
        };
        if let Some(cert) = complete(g, &members, 0, &pc, d) {
            cert.assert_valid(g, d);
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn complete(g: &Graph, members: &[Vertex], i: usize, pc: &PartialColouring, d: usize) -> Option<DCutCertificate> {
    let Some(&u) = members.get(i) else {
        debug_assert!(pc.is_complete());
        return pc.certificate(g, d);
    };
    let c = pc.colour(u).expect("dominating vertices are coloured first");
    let free: Vec<Vertex> = g.neighbours(u).ones().filter(|&w| !pc.is_coloured(w)).collect();
    for k in 0..=d.min(free.len()) {
        for flipped in free.iter().copied().combinations(k) {
            let mut next = pc.clone();
            for &w in &free {
                next.set(w, c);
            }
            for &w in &flipped {
                next.set(w, c.opposite());
            }
            let Ok(next) = propagate(g, &next, d, Rules::BUDGET, None) else {
                continue;
            };
            if let Some(cert) = complete(g, members, i + 1, &next, d) {
                return Some(cert);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::oracle_solve;
    use crate::graph::vertex_set;

    #[test]
    fn examples() {
        let claw = Graph::star(3);
        assert!(solve_with_dominating_set(&claw, &vertex_set(4, [0]), 1).unwrap().is_some());
        let k5 = Graph::complete(5);
        assert!(solve_with_dominating_set(&k5, &vertex_set(5, [2]), 2).unwrap().is_none());
        let w5 = Graph::wheel(5);
        let cert = solve_with_dominating_set(&w5, &vertex_set(6, [5]), 2).unwrap();
        assert_eq!(cert.is_some(), oracle_solve(&w5, 2, None).unwrap().is_some());
        assert!(cert.is_some());
    }

    #[test]
    fn rejects_non_dominating() {
        let p4 = Graph::path(4);
        assert_eq!(solve_with_dominating_set(&p4, &vertex_set(4, [0]), 1), Err(ColouringError::NotDominating(2)));
    }
}
