//! Torsion-freeness of the kernel of a finite representation, decided by
//! comparing vertex stabilisers with their images, and by Minkowski's
//! congruence criterion where it applies.

use std::fmt;

use num_bigint::BigUint;

use crate::coxdiagram::{classify_component, finite_type, ComponentKind, CoxeterDiagram};
use crate::finred::FiniteRepresentation;
use crate::fqmatrix::FqMatrix;
use crate::groupengine::{enumerate, GroupError};
use crate::linalg;
use crate::numberfield::{discriminant, divides, NumberFieldError, PrimeIdealData, PrimeKind, QuadraticFieldElement};

/// Whether reduction modulo the ideal has torsion-free kernel on `GL(n, O)`
/// by the congruence criterion. `false` is inconclusive.
pub fn minkowski_torsion_free(p: &PrimeIdealData) -> Result<bool, NumberFieldError> {
    if p.kind() == PrimeKind::Rational {
        return Ok(p.p() != 2);
    }
    let d = p.d();
    let alpha = p.generator()?;
    let two = QuadraticFieldElement::from_int(2, d);
    let three = QuadraticFieldElement::from_int(3, d);
    if divides(alpha, &two) {
        return Ok(false);
    }
    Ok(discriminant(d) % 3 != 0 || !divides(alpha, &three))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexGroup {
    /// A finite vertex; its stabiliser is the parabolic subgroup on `nodes`.
    Finite { nodes: Vec<usize> },
    /// An ideal vertex with Euclidean link on `nodes`; `refined` lists the
    /// vertex stabilisers of the link, each dropping one node from every
    /// affine component.
    Ideal { nodes: Vec<usize>, refined: Vec<Vec<usize>> },
}

impl VertexGroup {
    pub fn nodes(&self) -> &[usize] {
        match self {
            VertexGroup::Finite { nodes } | VertexGroup::Ideal { nodes, .. } => nodes,
        }
    }

    /// The finite groups whose images are compared.
    pub fn checked_subsets(&self) -> Vec<Vec<usize>> {
        match self {
            VertexGroup::Finite { nodes } => vec![nodes.clone()],
            VertexGroup::Ideal { refined, .. } => refined.clone(),
        }
    }
}

/// Dimension of the hyperbolic space: the positive index of the Gram matrix.
pub fn hyperbolic_dimension(d: &CoxeterDiagram) -> usize {
    linalg::signature(&d.gram_matrix()).0
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// Components of the induced diagram in original node numbers, each with
/// whether it is affine; `None` if some component is neither finite nor affine.
fn euclidean_components(d: &CoxeterDiagram, s: &[usize]) -> Option<Vec<(Vec<usize>, bool)>> {
    let sub = d.induced(s);
    sub.components()
        .into_iter()
        .map(|c| {
            let affine = match classify_component(&sub, &c) {
                ComponentKind::Finite { .. } => false,
                ComponentKind::Affine { .. } => true,
                ComponentKind::Other => return None,
            };
            Some((c.iter().map(|&i| s[i]).collect(), affine))
        })
        .collect()
}

/// Rank of the Euclidean link if `s` has an affine component, every other
/// component being finite or affine.
fn ideal_rank(d: &CoxeterDiagram, s: &[usize]) -> Option<(usize, Vec<(Vec<usize>, bool)>)> {
    let comps = euclidean_components(d, s)?;
    let affine = comps.iter().filter(|c| c.1).count();
    (affine > 0).then_some((s.len() - affine, comps))
}

/// Vertex stabilisers of the polyhedron in `dim`-dimensional hyperbolic
/// space: finite subdiagrams on `dim` nodes, and maximal subdiagrams of rank
/// `dim - 1` with an affine component.
pub fn vertex_groups(d: &CoxeterDiagram, dim: usize) -> Vec<VertexGroup> {
    let n = d.node_count();
    let mut out = Vec::new();
    let mut ideal: Vec<(u64, Vec<usize>, Vec<(Vec<usize>, bool)>)> = Vec::new();
    for s in subsets(n) {
        if s.len() == dim && finite_type(&d.induced(&s)).is_some() {
            out.push((s.clone(), VertexGroup::Finite { nodes: s }));
        } else if let Some((rank, comps)) = ideal_rank(d, &s) {
            if rank + 1 == dim {
                let mask = s.iter().fold(0u64, |m, &i| m | 1 << i);
                ideal.push((mask, s, comps));
            }
        }
    }
    for (mask, s, comps) in &ideal {
        if ideal.iter().any(|(m, _, _)| m != mask && m & mask == *mask) {
            continue;
        }
        let mut refined = vec![Vec::new()];
        for (c, affine) in comps {
            let choices: Vec<Vec<usize>> = if *affine {
                (0..c.len()).map(|k| c.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect()).collect()
            } else {
                vec![c.clone()]
            };
            refined = refined
                .iter()
                .flat_map(|r| choices.iter().map(move |ch| [r.as_slice(), ch].concat()))
                .collect();
        }
        for r in &mut refined {
            r.sort_unstable();
        }
        refined.sort();
        out.push((s.clone(), VertexGroup::Ideal { nodes: s.clone(), refined }));
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out.into_iter().map(|(_, v)| v).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    TorsionFree,
    HasTorsion,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::TorsionFree => "torsion_free",
            Verdict::HasTorsion => "has_torsion",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    /// Index into `TorsionVerdict::vertices`.
    pub vertex: usize,
    pub nodes: Vec<usize>,
    pub name: String,
    pub abstract_order: BigUint,
    pub image_order: BigUint,
}

impl GroupCheck {
    pub fn faithful(&self) -> bool {
        self.abstract_order == self.image_order
    }
}

#[derive(Clone, Debug)]
pub struct TorsionVerdict {
    pub verdict: Verdict,
    /// Outcome of the congruence criterion; `None` when it does not apply.
    pub minkowski: Option<bool>,
    pub vertices: Vec<VertexGroup>,
    pub certificate: Vec<GroupCheck>,
}

/// Order of the subgroup generated by the quotient images of `nodes`.
pub fn image_order(rep: &FiniteRepresentation, nodes: &[usize], cap: usize) -> Result<usize, GroupError> {
    let w = &rep.quotient;
    let gens: Vec<FqMatrix> = nodes.iter().map(|&i| w.generators[i].clone()).collect();
    Ok(enumerate(&gens, FqMatrix::identity(rep.field, w.dim()), cap)?.order())
}

/// Compares every vertex stabiliser with its image in the quotient
/// representation. `prime` enables the congruence criterion.
pub fn check_torsion_free(
    d: &CoxeterDiagram,
    rep: &FiniteRepresentation,
    prime: Option<&PrimeIdealData>,
    cap: usize,
) -> Result<TorsionVerdict, GroupError> {
    assert_eq!(rep.generators.len(), d.node_count(), "one generator per node");
    let vertices = vertex_groups(d, hyperbolic_dimension(d));
    let mut certificate = Vec::new();
    for (vi, v) in vertices.iter().enumerate() {
        for nodes in v.checked_subsets() {
            let ft = finite_type(&d.induced(&nodes)).expect("vertex stabilisers are finite");
            let image = image_order(rep, &nodes, cap)?;
            certificate.push(GroupCheck {
                vertex: vi,
                name: ft.name(),
                nodes,
                abstract_order: ft.total_order,
                image_order: BigUint::from(image),
            });
        }
    }
    let verdict = if certificate.iter().all(GroupCheck::faithful) {
        Verdict::TorsionFree
    } else {
        Verdict::HasTorsion
    };
    let minkowski = prime.and_then(|p| minkowski_torsion_free(p).ok());
    Ok(TorsionVerdict { verdict, minkowski, vertices, certificate })
}
