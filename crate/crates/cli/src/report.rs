//! The JSON report and its construction from pipeline values.

use num_traits::ToPrimitive;
use serde::Serialize;

use coxred_core::coxdiagram::CoxeterDiagram;
use coxred_core::glue::FaceSystem;
use coxred_core::groupengine::SnfResult;
use coxred_core::linalg::signature;
use coxred_core::numberfield::{PrimeIdealData, QuadraticFieldElement};
use coxred_core::pipeline::{HomologyReport, Invariants, PipelineError};
use coxred_core::torsion::{TorsionVerdict, VertexGroup};
use coxred_core::vinberg::VinbergLattice;

#[derive(Serialize, Default)]
pub struct Report {
    pub command: String,
    pub diagram: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    pub gram: Vec<Vec<String>>,
    pub signature: [usize; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Lattice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<Prime>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Reduction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Torsion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<Homology>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub glue: Option<Glue>,
}

#[derive(Serialize)]
pub struct Field {
    #[serde(rename = "D")]
    pub d: i64,
}

/// An element `a + b sqrt D` as `[a, b, D]`.
#[derive(Serialize)]
pub struct Triple(String, String, i64);

impl From<&QuadraticFieldElement> for Triple {
    fn from(x: &QuadraticFieldElement) -> Self {
        Triple(x.a().to_string(), x.b().to_string(), x.d())
    }
}

#[derive(Serialize)]
pub struct Lattice {
    /// One-based node paths.
    pub basis_words: Vec<Vec<usize>>,
    pub integral: bool,
    pub gram: Vec<Vec<Triple>>,
}

#[derive(Serialize)]
pub struct Prime {
    pub p: u32,
    pub kind: String,
    pub residue_q: u32,
    pub generator: Option<String>,
}

#[derive(Serialize)]
pub struct Reduction {
    pub dim: usize,
    pub radical_dim: usize,
    /// `null` in characteristic 2.
    pub form_class: Option<String>,
    /// `null` when the image has more than `cap` elements.
    pub image_order: Option<u64>,
    pub cap: u64,
}

#[derive(Serialize)]
pub struct CertificateEntry {
    pub vertex: usize,
    pub vertex_kind: &'static str,
    pub nodes: Vec<usize>,
    pub name: String,
    pub abstract_order: u64,
    pub image_order: u64,
    pub faithful: bool,
}

#[derive(Serialize)]
pub struct Torsion {
    pub minkowski: Option<bool>,
    pub verdict: String,
    pub certificate: Vec<CertificateEntry>,
}

#[derive(Serialize)]
pub struct InvariantsReport {
    pub euler_char: String,
    pub dimension: usize,
    pub manifold_euler: Option<String>,
    pub volume_factor: Option<String>,
}

#[derive(Serialize)]
pub struct Step {
    pub name: &'static str,
    pub index: usize,
    pub schreier_generators: usize,
    pub schreier_relators: usize,
    pub generators: usize,
    pub relators: usize,
}

#[derive(Serialize)]
pub struct Homology {
    pub h1_rank: usize,
    pub h1_torsion: Vec<u64>,
    pub steps: Vec<Step>,
    /// `(sigma, tau)` for the even generators, when a tensor frame was used.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<String>,
}

#[derive(Serialize)]
pub struct Glue {
    /// One-based.
    pub face: usize,
    pub faces: Vec<String>,
    pub face_gram: Vec<Vec<String>>,
    pub symbol: String,
    pub index_ratio: Option<String>,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(kind: &str, message: String) -> Self {
        Self { error: ErrorBody { kind: kind.to_string(), message } }
    }
}

impl From<&PipelineError> for ErrorReport {
    fn from(e: &PipelineError) -> Self {
        Self::new(e.kind(), e.to_string())
    }
}

fn strings<T: ToString>(m: &[Vec<T>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(T::to_string).collect()).collect()
}

pub fn base(command: &str, d: &CoxeterDiagram, field: Option<i64>) -> Report {
    let g = d.gram_matrix();
    let (p, n, z) = signature(&g);
    Report {
        command: command.to_string(),
        diagram: d.to_string(),
        field: field.map(|d| Field { d }),
        gram: strings(&g),
        signature: [p, n, z],
        ..Report::default()
    }
}

pub fn lattice(l: &VinbergLattice) -> Lattice {
    Lattice {
        basis_words: l.basis.iter().map(|w| w.one_based()).collect(),
        integral: true,
        gram: l.gram_k.iter().map(|r| r.iter().map(Triple::from).collect()).collect(),
    }
}

pub fn prime(p: &PrimeIdealData) -> Prime {
    Prime {
        p: p.p(),
        kind: p.kind().to_string(),
        residue_q: p.residue_q(),
        generator: p.generator().ok().map(|g| g.to_string()),
    }
}

pub fn torsion(t: &TorsionVerdict) -> Torsion {
    let certificate = t
        .certificate
        .iter()
        .map(|c| CertificateEntry {
            vertex: c.vertex,
            vertex_kind: match t.vertices[c.vertex] {
                VertexGroup::Finite { .. } => "finite",
                VertexGroup::Ideal { .. } => "ideal",
            },
            nodes: c.nodes.iter().map(|i| i + 1).collect(),
            name: c.name.clone(),
            abstract_order: c.abstract_order.to_u64().expect("order fits in u64"),
            image_order: c.image_order.to_u64().expect("order fits in u64"),
            faithful: c.faithful(),
        })
        .collect();
    Torsion { minkowski: t.minkowski, verdict: t.verdict.to_string(), certificate }
}

pub fn invariants(inv: &Invariants) -> InvariantsReport {
    InvariantsReport {
        euler_char: inv.euler_char.to_string(),
        dimension: inv.dimension,
        manifold_euler: inv.manifold_euler.as_ref().map(ToString::to_string),
        volume_factor: inv.volume_factor.as_ref().map(ToString::to_string),
    }
}

fn snf_torsion(h: &SnfResult) -> Vec<u64> {
    h.torsion().iter().map(|d| d.to_u64().expect("torsion coefficient fits in u64")).collect()
}

pub fn homology(h: &HomologyReport) -> Homology {
    Homology {
        h1_rank: h.h1.free_rank,
        h1_torsion: snf_torsion(&h.h1),
        steps: h
            .steps
            .iter()
            .map(|s| Step {
                name: s.name,
                index: s.index,
                schreier_generators: s.schreier_generators,
                schreier_relators: s.schreier_relators,
                generators: s.generators,
                relators: s.relators,
            })
            .collect(),
        pairs: h.even_pairs.iter().map(ToString::to_string).collect(),
    }
}

pub fn glue(face: usize, fs: &FaceSystem, symbol: &CoxeterDiagram, ratio: Option<String>) -> Glue {
    Glue {
        face: face + 1,
        faces: fs.faces.iter().map(ToString::to_string).collect(),
        face_gram: strings(&fs.gram),
        symbol: symbol.linear_symbol().unwrap_or_else(|| symbol.to_string()),
        index_ratio: ratio,
    }
}
