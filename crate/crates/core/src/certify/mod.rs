//! Graph-directed decomposition certificates: construction, exact
//! validation, finite-depth expansion and distortion estimates.
//!
//! A certificate lists vertex sets on both attractors and, for each vertex,
//! one edge: a tiling of the vertex set by similar copies of vertex sets,
//! with equal ratios on the two sides.

mod build;
mod expand;
mod serial;
mod tstar;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decide::{DecideError, SubstitutabilityWitness};
use crate::exactnum::{ExactRatio, NumError};
use crate::ifscore::{Similarity, SpecError, Word};

pub use build::{build_certificate, certify_witnesses, choose_pq, trivial_certificate, Builder};
pub use expand::{distortion_report, expand_map, is_bijective, Distortion, MapPiece};
pub use serial::{certificate_from_json, certificate_to_json, spec_digest};
pub use tstar::{member_words, tstar_decompose, Member};
pub use validate::{cylinder_of, validate, ValidationReport, MEASURE_TOL};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("no decomposition into family members: {reason}; residue {residue:?}")]
    Unrecognized { reason: String, residue: Vec<Word> },
    #[error("a touching pair needs depth {needed}, beyond (p, q) = ({p}, {q})")]
    ScanDepth { needed: usize, p: u64, q: u64 },
    #[error("no admissible (p, q) up to multiple {0}")]
    NoPq(u64),
    #[error("invalid certificate: {0}")]
    Invalid(String),
    #[error("format: {0}")]
    Format(String),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A vertex of the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum VertexId {
    Whole,
    Comp1(usize),
    Touch2(usize),
    Touch3(usize),
    Touch4(usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Whole => write!(f, "T"),
            VertexId::Comp1(i) => write!(f, "T1[{i}]"),
            VertexId::Touch2(i) => write!(f, "T2[{i}]"),
            VertexId::Touch3(i) => write!(f, "T3[{i}]"),
            VertexId::Touch4(i) => write!(f, "T4[{i}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    /// Cylinders of the set on the touching attractor, in order.
    pub t_words: Vec<Word>,
    /// Cylinders of the matching set on the dust; `d_words[k]` is paired
    /// with `t_words[k]` and has the same ratio.
    pub d_words: Vec<Word>,
    /// The witness a `Touch4` vertex is built from.
    pub witness: Option<SubstitutabilityWitness>,
}

/// One tile: the target vertex set placed by `t_map` on the touching side
/// and by `d_map` on the dust side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub target: VertexId,
    pub ratio: ExactRatio,
    pub t_map: Similarity,
    pub d_map: Similarity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: VertexId,
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub version: u32,
    pub spec_digest: String,
    pub dust_digest: String,
    pub p: u64,
    pub q: u64,
    pub witnesses: Vec<SubstitutabilityWitness>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Certificate {
    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: VertexId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.source == id)
    }
}
