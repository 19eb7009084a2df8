//! End-to-end runs: lattice, reduction, image order, torsion and Euler
//! characteristics, and the first homology of the kernel by iterated
//! Reidemeister–Schreier rewriting.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::coxdiagram::{euler_characteristic, CoxeterDiagram, DiagramError};
use crate::finred::{classify_form, reduce, ClassifyError, FiniteRepresentation, FinredError, FormClass};
use crate::fqmatrix::FqMatrix;
use crate::glue::GlueError;
use crate::groupengine::{
    abelianization, enumerate, reidemeister_schreier, schreier_coset_table, tietze_simplify_tracked,
    GroupElement, GroupError, GroupPresentation, Permutation, SnfResult, DEFAULT_CAP, DEFAULT_RELATOR_BUDGET,
};
use crate::numberfield::{splitting, NumberFieldError, PrimeIdealData};
use crate::tensorid::{davis_frame, MatrixPair, Psl2, TensorError, TensorFrame};
use crate::torsion::{check_torsion_free, hyperbolic_dimension, TorsionVerdict, Verdict};
use crate::vinberg::{VinbergError, VinbergLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Vinberg(#[from] VinbergError),
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
    #[error(transparent)]
    Finred(#[from] FinredError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error("{step}: expected index {expected}, found {found}")]
    UnexpectedIndex { step: &'static str, expected: usize, found: usize },
}

impl PipelineError {
    /// Short machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            PipelineError::Diagram(DiagramError::Parse(_) | DiagramError::Label { .. }) => "ParseError",
            PipelineError::Diagram(_) => "UnclassifiableSubdiagram",
            PipelineError::Vinberg(VinbergError::UnsupportedField(_)) => "UnsupportedField",
            PipelineError::Vinberg(VinbergError::NotFreeLattice(_)) => "NotFreeLattice",
            PipelineError::Vinberg(VinbergError::NonIntegralEntry { .. }) => "NotIntegral",
            PipelineError::Vinberg(VinbergError::Disconnected) => "Disconnected",
            PipelineError::Vinberg(VinbergError::NumberField(_)) | PipelineError::NumberField(_) => "NumberField",
            PipelineError::Finred(_) => "Reduction",
            PipelineError::Classify(_) => "FormClassification",
            PipelineError::Group(GroupError::CapExceeded(_)) => "CapExceeded",
            PipelineError::Group(GroupError::RelatorBudget { .. }) => "RelatorBudget",
            PipelineError::Tensor(TensorError::DecompositionFailure(_)) => "DecompositionFailure",
            PipelineError::Tensor(_) => "TensorFrame",
            PipelineError::Glue(GlueError::NotCoxeter { .. }) => "NotCoxeter",
            PipelineError::Glue(_) => "ZeroEulerCharacteristic",
            PipelineError::UnexpectedIndex { .. } => "UnexpectedIndex",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest group enumerated.
    pub cap: usize,
    pub relator_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, relator_budget: DEFAULT_RELATOR_BUDGET }
    }
}

/// The reduction of a diagram's lattice at one prime ideal.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub diagram: CoxeterDiagram,
    pub lattice: VinbergLattice,
    pub prime: PrimeIdealData,
    pub rep: FiniteRepresentation,
}

impl Reduction {
    /// Builds the lattice and reduces at the prime ideal above `p` chosen by
    /// [`splitting`].
    pub fn new(d: &CoxeterDiagram, p: u32) -> Result<Self, PipelineError> {
        let lattice = VinbergLattice::build(d)?;
        let prime = splitting(p, lattice.field)?;
        let rep = reduce(&lattice, &prime)?;
        Ok(Self { diagram: d.clone(), lattice, prime, rep })
    }

    /// Order of the group generated by the images on the quotient space.
    pub fn image_order(&self, cap: usize) -> Result<usize, PipelineError> {
        let w = &self.rep.quotient;
        Ok(enumerate(&w.generators, FqMatrix::identity(self.rep.field, w.dim()), cap)?.order())
    }

    /// `None` in characteristic 2.
    pub fn form_class(&self, cap: usize) -> Result<Option<FormClass>, PipelineError> {
        match classify_form(&self.rep.quotient.form, cap) {
            Ok(c) => Ok(Some(c)),
            Err(ClassifyError::CharacteristicTwo) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn torsion(&self, cap: usize) -> Result<TorsionVerdict, PipelineError> {
        Ok(check_torsion_free(&self.diagram, &self.rep, Some(&self.prime), cap)?)
    }
}

#[derive(Clone, Debug)]
pub struct Invariants {
    pub euler_char: BigRational,
    pub dimension: usize,
    /// `chi * |image|` when the kernel is torsion-free.
    pub manifold_euler: Option<BigRational>,
    /// The multiple of `4 pi^2 / 3` giving the manifold's volume, in
    /// dimension four.
    pub volume_factor: Option<BigRational>,
}

pub fn invariants(d: &CoxeterDiagram, image_order: Option<usize>, verdict: Option<Verdict>) -> Result<Invariants, PipelineError> {
    let euler_char = euler_characteristic(d)?;
    let dimension = hyperbolic_dimension(d);
    let manifold_euler = match (image_order, verdict) {
        (Some(n), Some(Verdict::TorsionFree)) => Some(&euler_char * BigRational::from_integer(BigInt::from(n))),
        _ => None,
    };
    let volume_factor = manifold_euler.clone().filter(|_| dimension == 4);
    Ok(Invariants { euler_char, dimension, manifold_euler, volume_factor })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyStep {
    pub name: &'static str,
    pub index: usize,
    pub schreier_generators: usize,
    pub schreier_relators: usize,
    pub generators: usize,
    pub relators: usize,
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub steps: Vec<HomologyStep>,
    /// The pair of each generator of the orientation-preserving subgroup
    /// after simplification.
    pub even_pairs: Vec<MatrixPair>,
    pub h1: SnfResult,
}

/// One Reidemeister–Schreier step followed by Tietze simplification; the
/// images of the new generators are carried along.
fn rewrite_step<T: GroupElement>(
    name: &'static str,
    pres: &GroupPresentation,
    images: &[FqMatrix],
    targets: &[T],
    identity: T,
    expected_index: usize,
    limits: Limits,
) -> Result<(GroupPresentation, Vec<FqMatrix>, HomologyStep), PipelineError> {
    let (table, _) = schreier_coset_table(pres, targets, identity, limits.cap)?;
    if table.index() != expected_index {
        return Err(PipelineError::UnexpectedIndex { step: name, expected: expected_index, found: table.index() });
    }
    let rs = reidemeister_schreier(pres, &table, limits.relator_budget)?;
    let inverses: Vec<FqMatrix> = images.iter().map(|m| m.inverse().expect("isometries are invertible")).collect();
    let word_image = |w: &[i32]| {
        w.iter().fold(FqMatrix::identity(images[0].field(), images[0].n()), |acc, &l| {
            let g = l.unsigned_abs() as usize - 1;
            acc.mul(if l > 0 { &images[g] } else { &inverses[g] })
        })
    };
    let simplified = tietze_simplify_tracked(&rs.presentation, 0, None);
    let new_images = simplified.kept.iter().map(|&g| word_image(&rs.generator_words[g])).collect();
    let step = HomologyStep {
        name,
        index: expected_index,
        schreier_generators: rs.presentation.generator_count,
        schreier_relators: rs.presentation.relators.len(),
        generators: simplified.presentation.generator_count,
        relators: simplified.presentation.relators.len(),
    };
    Ok((simplified.presentation, new_images, step))
}

/// `H_1` of the kernel of `Gamma -> O(W)` when the image is `Omega` extended
/// by an odd element: pass to the even subgroup, then to the kernel onto
/// `PSL(2, p)` from the first tensor factor, then to the kernel onto
/// `SL(2, p)` from the second.
pub fn two_step_homology(
    d: &CoxeterDiagram,
    rep: &FiniteRepresentation,
    frame: &TensorFrame,
    limits: Limits,
) -> Result<HomologyReport, PipelineError> {
    let f = rep.field;
    let p = f.characteristic() as usize;
    let psl_order = p * (p * p - 1) / 2;
    let pres = d.coxeter_presentation();
    let images = rep.quotient.generators.clone();
    let sign = vec![Permutation(vec![1, 0]); pres.generator_count];
    let (even, even_images, s1) = rewrite_step("even", &pres, &images, &sign, Permutation::identity(2), 2, limits)?;

    let even_pairs = even_images.iter().map(|m| frame.pair(m)).collect::<Result<Vec<_>, _>>()?;
    let first: Vec<Psl2> = even_pairs.iter().map(MatrixPair::first_factor).collect();
    let (k1, k1_images, s2) =
        rewrite_step("psl", &even, &even_images, &first, Psl2::identity(f), psl_order, limits)?;

    let second = k1_images
        .iter()
        .map(|m| {
            frame.pair(m)?.second_factor().ok_or_else(|| {
                TensorError::DecompositionFailure(format!("first factor of {m} is not +-I"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (k, _, s3) =
        rewrite_step("sl", &k1, &k1_images, &second, FqMatrix::identity(f, 2), 2 * psl_order, limits)?;
    Ok(HomologyReport { steps: vec![s1, s2, s3], even_pairs, h1: abelianization(&k) })
}

/// `H_1` of the kernel of `Gamma -> O(W)` by a single rewriting step over
/// the whole image; only practical for small images.
pub fn direct_homology(d: &CoxeterDiagram, rep: &FiniteRepresentation, limits: Limits) -> Result<HomologyReport, PipelineError> {
    let pres = d.coxeter_presentation();
    let w = &rep.quotient;
    let id = FqMatrix::identity(rep.field, w.dim());
    let (table, _) = schreier_coset_table(&pres, &w.generators, id, limits.cap)?;
    let rs = reidemeister_schreier(&pres, &table, limits.relator_budget)?;
    let simplified = tietze_simplify_tracked(&rs.presentation, 0, None);
    let step = HomologyStep {
        name: "kernel",
        index: table.index(),
        schreier_generators: rs.presentation.generator_count,
        schreier_relators: rs.presentation.relators.len(),
        generators: simplified.presentation.generator_count,
        relators: simplified.presentation.relators.len(),
    };
    Ok(HomologyReport { steps: vec![step], even_pairs: Vec::new(), h1: abelianization(&simplified.presentation) })
}

/// The Davis run: `[5,3,3,5]` modulo `sqrt 5`.
pub fn davis_homology(limits: Limits) -> Result<HomologyReport, PipelineError> {
    let d = crate::coxdiagram::delta3();
    let red = Reduction::new(&d, 5)?;
    let frame = davis_frame(&red.lattice, &red.prime, &red.rep)?;
    two_step_homology(&d, &red.rep, &frame, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxdiagram::delta3;

    #[test]
    fn delta3_reduction_summary() {
        let red = Reduction::new(&delta3(), 5).unwrap();
        assert_eq!(red.image_order(DEFAULT_CAP).unwrap(), 14400);
        let class = red.form_class(1000).unwrap().unwrap();
        assert_eq!(class.to_string(), "O4+");
        let t = red.torsion(DEFAULT_CAP).unwrap();
        let inv = invariants(&delta3(), Some(14400), Some(t.verdict)).unwrap();
        assert_eq!(inv.euler_char.to_string(), "13/7200");
        assert_eq!(inv.manifold_euler.unwrap().to_string(), "26");
    }

    #[test]
    fn direct_kernel_of_a_triangle_group() {
        // (2, 4, 5) mod 3: the kernel is a closed surface group
        let d = crate::coxdiagram::parse_diagram("[4,5]").unwrap();
        let red = Reduction::new(&d, 3).unwrap();
        let n = red.image_order(DEFAULT_CAP).unwrap();
        let report = direct_homology(&d, &red.rep, Limits::default()).unwrap();
        assert_eq!(report.steps[0].index, n);
        let chi = euler_characteristic(&d).unwrap() * BigRational::from_integer(BigInt::from(n));
        assert_eq!(red.torsion(DEFAULT_CAP).unwrap().verdict, Verdict::TorsionFree);
        let chi: i64 = chi.to_integer().try_into().unwrap();
        // closed surface: Z^(2 - chi) if orientable, Z^(1 - chi) + Z/2 if not
        let torsion = report.h1.torsion();
        if torsion.is_empty() {
            assert_eq!(report.h1.free_rank as i64, 2 - chi);
        } else {
            assert_eq!(torsion, vec![BigInt::from(2)]);
            assert_eq!(report.h1.free_rank as i64, 1 - chi);
        }
    }

    #[test]
    fn errors_have_kinds() {
        let e = PipelineError::Group(GroupError::CapExceeded(3));
        assert_eq!(e.kind(), "CapExceeded");
        let d = crate::coxdiagram::parse_diagram("nodes=4; 1-2:4; 2-3:6; 1-3:3; 3-4:5").unwrap();
        let e = Reduction::new(&d, 5).unwrap_err();
        assert_eq!(e.kind(), "UnsupportedField");
    }
}
