//! CNF instances in the two restricted forms the reductions start from,
//! DIMACS input, and an exhaustive satisfiability check.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default largest variable count [`sat_oracle`] will enumerate.
pub const SAT_GUARD: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavour {
    /// Not-all-equal satisfiability, every clause three distinct positive literals.
    NaeAllPositive,
    /// Ordinary satisfiability; each clause all-positive or all-negative over
    /// three distinct variables, each variable twice positive and twice negative.
    SplitPosNeg,
}

/// Literals are DIMACS-style: `k` is variable `k-1` positive, `-k` negated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfInstance {
    pub n_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub flavour: Flavour,
}

/// Truth value per variable.
pub type Assignment = Vec<bool>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceViolation {
    ClauseSize { clause: usize, len: usize },
    VariableOutOfRange { clause: usize, literal: i32 },
    RepeatedVariable { clause: usize, var: usize },
    NegativeLiteral { clause: usize },
    MixedPolarity { clause: usize },
    Occurrences { var: usize, positive: bool, count: usize },
    TooFewClauses { positive: bool, count: usize },
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InstanceViolation::*;
        match self {
            ClauseSize { clause, len } => write!(f, "clause {clause} has {len} literals, expected 3"),
            VariableOutOfRange { clause, literal } => write!(f, "clause {clause}: literal {literal} is out of range"),
            RepeatedVariable { clause, var } => write!(f, "clause {clause}: variable x{} repeated", var + 1),
            NegativeLiteral { clause } => write!(f, "clause {clause} has a negative literal"),
            MixedPolarity { clause } => write!(f, "clause {clause} mixes positive and negative literals"),
            Occurrences { var, positive, count } => write!(
                f,
                "variable x{} occurs {count} times {}, expected 2",
                var + 1,
                if *positive { "positively" } else { "negatively" }
            ),
            TooFewClauses { positive, count } => {
                write!(f, "{count} {} clauses, need at least 4", if *positive { "positive" } else { "negative" })
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("{n_vars} variables exceed the exhaustive guard of {guard}")]
    GuardExceeded { n_vars: usize, guard: usize },
    #[error("assignment has {got} values for {want} variables")]
    AssignmentLength { got: usize, want: usize },
}

impl CnfInstance {
    pub fn var(lit: i32) -> usize {
        lit.unsigned_abs() as usize - 1
    }

    /// Positive clauses followed by negative ones, in input order.
    pub fn positive_clauses(&self) -> impl Iterator<Item = &Vec<i32>> {
        self.clauses.iter().filter(|c| c.iter().all(|&l| l > 0))
    }

    pub fn negative_clauses(&self) -> impl Iterator<Item = &Vec<i32>> {
        self.clauses.iter().filter(|c| c.iter().all(|&l| l < 0))
    }

    fn literal_true(lit: i32, a: &[bool]) -> bool {
        a[Self::var(lit)] == (lit > 0)
    }

    /// Whether `a` satisfies the instance in its flavour's sense.
    pub fn satisfied_by(&self, a: &[bool]) -> Result<bool, CnfError> {
        if a.len() != self.n_vars {
            return Err(CnfError::AssignmentLength { got: a.len(), want: self.n_vars });
        }
        Ok(self.clauses.iter().all(|c| {
            let t = c.iter().filter(|&&l| Self::literal_true(l, a)).count();
            match self.flavour {
                Flavour::NaeAllPositive => t > 0 && t < c.len(),
                Flavour::SplitPosNeg => t > 0,
            }
        }))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&l.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Parse DIMACS CNF. The flavour is `SplitPosNeg` if any literal is
/// negative and `NaeAllPositive` otherwise; run [`validate_instance`] next.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance, CnfError> {
    let err = |line: usize, message: String| CnfError::Dimacs { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(err(line, format!("bad problem line {t:?}")));
            }
            let n = parts[2].parse().map_err(|_| err(line, format!("bad variable count {:?}", parts[2])))?;
            let m = parts[3].parse().map_err(|_| err(line, format!("bad clause count {:?}", parts[3])))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err(line, "clause before the problem line".into()));
        };
        for tok in t.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(line, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n {
                return Err(err(line, format!("literal {lit} exceeds {n} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((n_vars, m)) = header else {
        return Err(err(0, "missing problem line".into()));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != m {
        return Err(err(0, format!("header promises {m} clauses, found {}", clauses.len())));
    }
    let flavour = if clauses.iter().flatten().any(|&l| l < 0) { Flavour::SplitPosNeg } else { Flavour::NaeAllPositive };
    Ok(CnfInstance { n_vars, clauses, flavour })
}

/// Every way `inst` breaks its flavour's restrictions; empty when valid.
pub fn validate_instance(inst: &CnfInstance) -> Vec<InstanceViolation> {
    use InstanceViolation::*;
    let mut out = Vec::new();
    let mut pos = vec![0usize; inst.n_vars];
    let mut neg = vec![0usize; inst.n_vars];
    let (mut p, mut q) = (0, 0);
    for (ci, c) in inst.clauses.iter().enumerate() {
        if c.len() != 3 {
            out.push(ClauseSize { clause: ci, len: c.len() });
        }
        let mut seen = Vec::new();
        for &l in c {
            if l == 0 || l.unsigned_abs() as usize > inst.n_vars {
                out.push(VariableOutOfRange { clause: ci, literal: l });
                continue;
            }
            let v = CnfInstance::var(l);
            if seen.contains(&v) {
                out.push(RepeatedVariable { clause: ci, var: v });
            }
            seen.push(v);
            if l > 0 {
                pos[v] += 1;
            } else {
                neg[v] += 1;
            }
        }
        let (has_pos, has_neg) = (c.iter().any(|&l| l > 0), c.iter().any(|&l| l < 0));
        match inst.flavour {
            Flavour::NaeAllPositive if has_neg => out.push(NegativeLiteral { clause: ci }),
            Flavour::SplitPosNeg if has_pos && has_neg => out.push(MixedPolarity { clause: ci }),
            Flavour::SplitPosNeg if has_pos => p += 1,
            Flavour::SplitPosNeg if has_neg => q += 1,
            _ => {}
        }
    }
    if inst.flavour == Flavour::SplitPosNeg {
        for v in 0..inst.n_vars {
            if pos[v] != 2 {
                out.push(Occurrences { var: v, positive: true, count: pos[v] });
            }
            if neg[v] != 2 {
                out.push(Occurrences { var: v, positive: false, count: neg[v] });
            }
        }
        if p < 4 {
            out.push(TooFewClauses { positive: true, count: p });
        }
        if q < 4 {
            out.push(TooFewClauses { positive: false, count: q });
        }
    }
    out
}

/// Exhaustive search over all assignments, first in binary counting order
/// with variable 0 as the lowest bit.
pub fn sat_oracle(inst: &CnfInstance) -> Result<Option<Assignment>, CnfError> {
    sat_oracle_with(inst, SAT_GUARD)
}

pub fn sat_oracle_with(inst: &CnfInstance, guard: usize) -> Result<Option<Assignment>, CnfError> {
    let n = inst.n_vars;
    if n > guard {
        return Err(CnfError::GuardExceeded { n_vars: n, guard });
    }
    for bits in 0u64..(1u64 << n) {
        let a: Assignment = (0..n).map(|v| bits >> v & 1 == 1).collect();
        if inst.satisfied_by(&a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// The instance drawn in the paper's 3P2 figure: six variables, four
/// positive and four negative clauses.
pub fn figure_instance() -> CnfInstance {
    CnfInstance {
        n_vars: 6,
        clauses: vec![
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![2, 5, 6],
            vec![4, 5, 6],
            vec![-1, -2, -4],
            vec![-1, -3, -5],
            vec![-2, -4, -6],
            vec![-3, -5, -6],
        ],
        flavour: Flavour::SplitPosNeg,
    }
}

/// NAE over the seven lines of the Fano plane (unsatisfiable).
pub fn fano_instance() -> CnfInstance {
    CnfInstance {
        n_vars: 7,
        clauses: vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ],
        flavour: Flavour::NaeAllPositive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_is_valid_and_satisfiable() {
        let inst = figure_instance();
        assert!(validate_instance(&inst).is_empty());
        let a = sat_oracle(&inst).unwrap().unwrap();
        assert!(inst.satisfied_by(&a).unwrap());
    }

    #[test]
    fn nae() {
        let one = CnfInstance { n_vars: 3, clauses: vec![vec![1, 2, 3]], flavour: Flavour::NaeAllPositive };
        assert!(one.satisfied_by(&[true, true, false]).unwrap());
        assert!(!one.satisfied_by(&[true, true, true]).unwrap());
        assert!(sat_oracle(&one).unwrap().is_some());
        assert_eq!(sat_oracle(&fano_instance()).unwrap(), None);
    }

    #[test]
    fn violations() {
        let dup = CnfInstance { n_vars: 2, clauses: vec![vec![1, 2, 2]], flavour: Flavour::NaeAllPositive };
        assert_eq!(validate_instance(&dup), vec![InstanceViolation::RepeatedVariable { clause: 0, var: 1 }]);
        let mut bad = figure_instance();
        bad.clauses[2] = vec![1, 5, 6];
        let v = validate_instance(&bad);
        assert!(v.contains(&InstanceViolation::Occurrences { var: 0, positive: true, count: 3 }));
        assert!(v.contains(&InstanceViolation::Occurrences { var: 1, positive: true, count: 1 }));
    }

    #[test]
    fn dimacs_round_trip() {
        let inst = figure_instance();
        let back = parse_dimacs(&inst.to_dimacs()).unwrap();
        assert_eq!(back, inst);
        let nae = parse_dimacs("c one clause\np cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(nae.flavour, Flavour::NaeAllPositive);
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
    }
}
