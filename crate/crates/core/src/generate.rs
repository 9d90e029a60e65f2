//! Seeded random instances: graphs of the solvable classes (by rejection
//! against the recognisers), all labelled connected graphs for tiny n, and
//! random restricted CNF instances.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gadgets::{CnfInstance, Flavour};
use crate::graph::{diameter, find_induced, Graph, PatternId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Connected,
    Diam2,
    P5Free,
    /// (P3+P4)-free graphs that still contain an induced P4.
    P3P4Free,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] =
        [GraphClass::Connected, GraphClass::Diam2, GraphClass::P5Free, GraphClass::P3P4Free];

    pub fn contains(self, g: &Graph) -> bool {
        g.is_connected()
            && match self {
                GraphClass::Connected => true,
                GraphClass::Diam2 => diameter(g).is_at_most(2),
                GraphClass::P5Free => find_induced(g, &PatternId::path(5)).is_none(),
                GraphClass::P3P4Free => {
                    find_induced(g, &PatternId::p3_plus_p4()).is_none()
                        && find_induced(g, &PatternId::path(4)).is_some()
                }
            }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Connected => "connected",
            GraphClass::Diam2 => "diam2",
            GraphClass::P5Free => "p5free",
            GraphClass::P3P4Free => "p3p4free",
        })
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| format!("unknown class {s:?} (expected connected, diam2, p5free or p3p4free)"))
    }
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub class: GraphClass,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    /// Edge probability is drawn uniformly from this range for each candidate.
    pub p_range: (f64, f64),
    /// Plant a clique on this many vertices before adding random edges.
    pub planted_clique: Option<usize>,
    /// Candidates drawn per requested graph before giving up.
    pub tries_per_graph: usize,
}

impl GenConfig {
    pub fn new(class: GraphClass, n: usize, count: usize, seed: u64) -> Self {
        GenConfig { class, n, count, seed, p_range: (0.2, 0.8), planted_clique: None, tries_per_graph: 2000 }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graphs: Vec<Graph>,
    pub candidates: usize,
}

impl Generated {
    pub fn acceptance_rate(&self) -> f64 {
        self.graphs.len() as f64 / self.candidates.max(1) as f64
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("gave up after {candidates} candidates with {accepted} of {wanted} {class} graphs (acceptance rate {rate:.4})")]
pub struct RejectionExhausted {
    pub class: GraphClass,
    pub wanted: usize,
    pub accepted: usize,
    pub candidates: usize,
    pub rate: f64,
}

/// G(n, p), optionally with a clique planted on the first `k` vertices.
pub fn random_graph(n: usize, p: f64, planted: Option<usize>, rng: &mut impl Rng) -> Graph {
    let k = planted.unwrap_or(0).min(n);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if v < k || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("edges in range")
}

/// `count` members of the class, drawn by rejection. Deterministic in the seed.
pub fn generate(cfg: &GenConfig) -> Result<Generated, RejectionExhausted> {
    let mut rng = rng(cfg.seed);
    let (lo, hi) = cfg.p_range;
    let budget = cfg.tries_per_graph.saturating_mul(cfg.count.max(1));
    let mut out = Generated { graphs: Vec::new(), candidates: 0 };
    while out.graphs.len() < cfg.count {
        if out.candidates >= budget {
            return Err(RejectionExhausted {
                class: cfg.class,
                wanted: cfg.count,
                accepted: out.graphs.len(),
                candidates: out.candidates,
                rate: out.acceptance_rate(),
            });
        }
        out.candidates += 1;
        let p = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
        let g = random_graph(cfg.n, p, cfg.planted_clique, &mut rng);
        if cfg.class.contains(&g) {
            out.graphs.push(g);
        }
    }
    Ok(out)
}

/// Every connected graph on vertices `0..n` (labelled, so isomorphic copies
/// repeat). Meant for n <= 7.
pub fn labelled_connected(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "labelled enumeration is only sensible for tiny n");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).filter_map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        let g = Graph::from_edges(n, edges).expect("edges in range");
        g.is_connected().then_some(g)
    })
}

/// Three-variable clauses from a shuffled list of variable slots, or `None`
/// if the shuffle put a variable twice in one clause or repeated a clause.
fn chunk_clauses(slots: &mut [usize], rng: &mut impl Rng, negate: bool) -> Option<Vec<Vec<i32>>> {
    slots.shuffle(rng);
    let mut out: Vec<Vec<i32>> = Vec::new();
    for chunk in slots.chunks(3) {
        let mut c: Vec<i32> = chunk.iter().map(|&v| v as i32 + 1).collect();
        c.sort_unstable();
        if c.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        if negate {
            c.iter_mut().for_each(|l| *l = -*l);
        }
        if out.contains(&c) {
            return None;
        }
        out.push(c);
    }
    Some(out)
}

/// A random instance where each of the `n` variables occurs in exactly two
/// positive and two negative clauses. Needs `n` divisible by 3 and `n >= 6`
/// (so there are at least four clauses of each sign).
pub fn random_split_pos_neg(n: usize, rng: &mut impl Rng) -> CnfInstance {
    assert!(n.is_multiple_of(3) && n >= 6, "need n divisible by 3 and at least 6, got {n}");
    let mut slots: Vec<usize> = (0..n).flat_map(|v| [v, v]).collect();
    loop {
        let Some(mut pos) = chunk_clauses(&mut slots, rng, false) else { continue };
        let Some(neg) = chunk_clauses(&mut slots, rng, true) else { continue };
        pos.extend(neg);
        return CnfInstance { n_vars: n, clauses: pos, flavour: Flavour::SplitPosNeg };
    }
}

/// `m` distinct random three-variable positive clauses over `n` variables.
pub fn random_nae(n: usize, m: usize, rng: &mut impl Rng) -> CnfInstance {
    assert!(n >= 3, "need at least three variables");
    let distinct = n * (n - 1) * (n - 2) / 6;
    assert!(m <= distinct, "only {distinct} distinct clauses on {n} variables, asked for {m}");
    let vars: Vec<i32> = (1..=n as i32).collect();
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    while clauses.len() < m {
        let mut c: Vec<i32> = vars.choose_multiple(rng, 3).copied().collect();
        c.sort_unstable();
        if !clauses.contains(&c) {
            clauses.push(c);
        }
    }
    CnfInstance { n_vars: n, clauses, flavour: Flavour::NaeAllPositive }
}

/// Every clause list over variables `0..n` with each variable in exactly two
/// clauses, as sorted lists of sorted triples.
fn one_sign_sides(n: usize) -> Vec<Vec<[usize; 3]>> {
    let triples: Vec<[usize; 3]> = (0..n).combinations(3).map(|c| [c[0], c[1], c[2]]).collect();
    triples
        .into_iter()
        .combinations(2 * n / 3)
        .filter(|set| {
            let mut count = vec![0; n];
            set.iter().flatten().for_each(|&v| count[v] += 1);
            count.iter().all(|&c| c == 2)
        })
        .collect()
}

/// All valid six-variable instances up to renaming variables and reordering
/// clauses: the positive side runs over one representative per renaming
/// class, the negative side over everything.
pub fn all_split_pos_neg_n6() -> Vec<CnfInstance> {
    let n = 6;
    let sides = one_sign_sides(n);
    let relabel = |side: &[[usize; 3]], perm: &[usize]| {
        let mut out: Vec<[usize; 3]> = side
            .iter()
            .map(|t| {
                let mut r = t.map(|v| perm[v]);
                r.sort_unstable();
                r
            })
            .collect();
        out.sort_unstable();
        out
    };
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let reps: BTreeSet<Vec<[usize; 3]>> =
        sides.iter().map(|s| perms.iter().map(|p| relabel(s, p)).min().expect("n > 0")).collect();
    fn lits(side: &[[usize; 3]], sign: i32) -> impl Iterator<Item = Vec<i32>> + '_ {
        side.iter().map(move |t| t.iter().map(|&v| sign * (v as i32 + 1)).collect())
    }
    reps.iter()
        .flat_map(|pos| {
            sides.iter().map(move |neg| CnfInstance {
                n_vars: n,
                clauses: lits(pos, 1).chain(lits(neg, -1)).collect(),
                flavour: Flavour::SplitPosNeg,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::validate_instance;

    #[test]
    fn classes_are_respected() {
        for class in GraphClass::ALL {
            let mut cfg = GenConfig::new(class, 9, 5, 1);
            if class == GraphClass::P5Free {
                cfg.p_range = (0.5, 0.9);
            }
            let got = generate(&cfg).unwrap();
            assert_eq!(got.graphs.len(), 5);
            assert!(got.graphs.iter().all(|g| class.contains(g)), "{class}");
        }
    }

    #[test]
    fn same_seed_same_graphs() {
        let cfg = GenConfig::new(GraphClass::Diam2, 10, 5, 7);
        assert_eq!(generate(&cfg).unwrap().graphs, generate(&cfg).unwrap().graphs);
    }

    #[test]
    fn exhaustion_is_reported() {
        let mut cfg = GenConfig::new(GraphClass::Diam2, 12, 3, 0);
        cfg.p_range = (0.01, 0.01);
        cfg.tries_per_graph = 5;
        let err = generate(&cfg).unwrap_err();
        assert_eq!((err.accepted, err.candidates), (0, 15));
    }

    #[test]
    fn labelled_counts() {
        // OEIS A001187
        let counts: Vec<_> = (1..=5).map(|n| labelled_connected(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn random_cnf_is_valid() {
        let mut r = rng(3);
        for n in [6, 9, 12] {
            for _ in 0..20 {
                let inst = random_split_pos_neg(n, &mut r);
                assert_eq!(validate_instance(&inst), vec![]);
            }
        }
        let all = all_split_pos_neg_n6();
        assert!(all.iter().all(|i| validate_instance(i).is_empty()));
        let nae = random_nae(8, 10, &mut r);
        assert_eq!(nae.clauses.len(), 10);
        assert_eq!(validate_instance(&nae), vec![]);
    }
}
