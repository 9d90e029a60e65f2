//! The two hardness reductions: NAE-3SAT to red-blue edge d-colouring (and
//! so to d-Cut on line graphs), and restricted 3-SAT to d-Cut on 3P2-free
//! graphs of radius 2.

mod cnf;
mod line;
mod threep2;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use cnf::{
    fano_instance, figure_instance, parse_dimacs, sat_oracle, sat_oracle_with, validate_instance, Assignment, CnfError,
    CnfInstance, Flavour, InstanceViolation, SAT_GUARD,
};
pub use line::{build_line_gadget, check_clique_claim, line_image, witness_edge_colouring};
pub use threep2::{build_3p2_gadget, witness_colouring_3p2, ClassCheck};
pub use verify::{verify_reduction, AgreementReport, DcutDecision, VerifyConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    LineGadget,
    ThreeP2Gadget,
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetKind::LineGadget => "nae-line",
            GadgetKind::ThreeP2Gadget => "3p2",
        })
    }
}

/// What a gadget vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Role {
    pub vertex: Vertex,
    pub role: String,
    pub index: Vec<usize>,
}

impl Role {
    fn new(vertex: Vertex, role: &str, index: impl Into<Vec<usize>>) -> Self {
        Role { vertex, role: role.to_string(), index: index.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedClique {
    pub name: String,
    pub vertices: Vec<Vertex>,
}

/// The graph the line-graph gadget is built on, before taking `L(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLine {
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub cliques: Vec<NamedClique>,
    /// Vertex `i` of the line graph is the edge `edges[i]` of `graph`.
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetOutput {
    pub kind: GadgetKind,
    pub d: usize,
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// Only for the line gadget.
    pub pre_line: Option<PreLine>,
}

impl GadgetOutput {
    /// Vertices of `graph` whose role is `role`, in vertex order.
    pub fn with_role(&self, role: &str) -> Vec<Vertex> {
        self.roles.iter().filter(|r| r.role == role).map(|r| r.vertex).collect()
    }

    pub fn role_map_json(&self) -> String {
        serde_json::to_string_pretty(&self.roles).expect("roles serialize")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("instance violates its restrictions: {}", list(.0))]
    Invalid(Vec<InstanceViolation>),
    #[error("gadget needs a {want:?} instance, got {got:?}")]
    WrongFlavour { want: Flavour, got: Flavour },
    #[error("gadget needs d >= {min}, got {d}")]
    DTooSmall { d: usize, min: usize },
    #[error("gadget failed certification: {0}")]
    Certification(String),
    #[error("assignment does not satisfy the instance")]
    NotSatisfying,
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn check_input(inst: &CnfInstance, want: Flavour, d: usize, min_d: usize) -> Result<(), GadgetError> {
    if inst.flavour != want {
        return Err(GadgetError::WrongFlavour { want, got: inst.flavour });
    }
    if d < min_d {
        return Err(GadgetError::DTooSmall { d, min: min_d });
    }
    let v = validate_instance(inst);
    if !v.is_empty() {
        return Err(GadgetError::Invalid(v));
    }
    Ok(())
}

fn check_assignment(inst: &CnfInstance, a: &[bool]) -> Result<(), GadgetError> {
    if inst.satisfied_by(a)? {
        Ok(())
    } else {
        Err(GadgetError::NotSatisfying)
    }
}
