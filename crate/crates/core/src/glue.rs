//! Doubling a Coxeter polyhedron across one of its faces.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::coxdiagram::{euler_characteristic, CoxeterDiagram, DiagramError, EdgeLabel};
use crate::numberfield::MultiQuadElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("Gram entry ({row}, {col}) = {value} is not a Coxeter entry")]
    NotCoxeter { row: usize, col: usize, value: String },
    #[error("Euler characteristic of the smaller diagram is zero")]
    ZeroEulerCharacteristic,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    /// The normal `e_j`.
    Normal(usize),
    /// `r_i(e_j)`.
    Reflected { mirror: usize, normal: usize },
}

impl std::fmt::Display for Face {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Face::Normal(j) => write!(f, "e{}", j + 1),
            Face::Reflected { mirror, normal } => write!(f, "r{}(e{})", mirror + 1, normal + 1),
        }
    }
}

/// Face normals with their coordinates in the original normal basis and
/// their Gram matrix.
#[derive(Clone, Debug)]
pub struct FaceSystem {
    pub faces: Vec<Face>,
    pub vectors: Vec<Vec<MultiQuadElement>>,
    pub gram: Vec<Vec<MultiQuadElement>>,
}

impl FaceSystem {
    /// The faces of the polyhedron itself.
    pub fn from_diagram(d: &CoxeterDiagram) -> Self {
        let n = d.node_count();
        let vectors = (0..n).map(|j| unit(n, j)).collect();
        Self { faces: (0..n).map(Face::Normal).collect(), vectors, gram: d.gram_matrix() }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

fn unit(n: usize, j: usize) -> Vec<MultiQuadElement> {
    (0..n)
        .map(|k| if k == j { MultiQuadElement::one() } else { MultiQuadElement::zero() })
        .collect()
}

/// `P` glued to `r_i(P)` along face `i`: the normals `e_j` and `r_i(e_j)`
/// for `j != i`, the latter only when it differs from `e_j`.
pub fn double(d: &CoxeterDiagram, i: usize) -> FaceSystem {
    let n = d.node_count();
    assert!(i < n, "node {i} out of range");
    let a = d.gram_matrix();
    let mut faces: Vec<Face> = (0..n).filter(|&j| j != i).map(Face::Normal).collect();
    faces.extend((0..n).filter(|&j| j != i && !a[i][j].is_zero()).map(|j| Face::Reflected { mirror: i, normal: j }));
    let vectors = faces
        .iter()
        .map(|f| match *f {
            Face::Normal(j) => unit(n, j),
            Face::Reflected { mirror, normal } => {
                let mut v = unit(n, normal);
                v[mirror] = -&a[mirror][normal];
                v
            }
        })
        .collect();
    let entry = |x: &Face, y: &Face| match (*x, *y) {
        (Face::Normal(j), Face::Normal(k)) => a[j][k].clone(),
        (Face::Reflected { mirror, normal: j }, Face::Normal(k))
        | (Face::Normal(k), Face::Reflected { mirror, normal: j }) => &a[j][k] - &(&a[mirror][j] * &a[mirror][k]),
        (Face::Reflected { normal: j, .. }, Face::Reflected { normal: l, .. }) => a[j][l].clone(),
    };
    let gram = faces.iter().map(|x| faces.iter().map(|y| entry(x, y)).collect()).collect();
    FaceSystem { faces, vectors, gram }
}

/// Reads the Gram matrix back as a Coxeter diagram.
pub fn recognize(fs: &FaceSystem) -> Result<CoxeterDiagram, GlueError> {
    let n = fs.len();
    let two = MultiQuadElement::from_int(2);
    let labels: Vec<(u32, MultiQuadElement)> =
        (3..=6).map(|m| (m, MultiQuadElement::neg_two_cos_pi_over(m).unwrap())).collect();
    let mut d = CoxeterDiagram::new(n);
    for r in 0..n {
        let not_coxeter = |c: usize| GlueError::NotCoxeter { row: r, col: c, value: fs.gram[r][c].to_string() };
        if fs.gram[r][r] != two {
            return Err(not_coxeter(r));
        }
        for c in r + 1..n {
            let x = &fs.gram[r][c];
            if x.is_zero() {
                continue;
            }
            let label = if let Some((m, _)) = labels.iter().find(|(_, v)| v == x) {
                EdgeLabel::Angle(*m)
            } else if *x == -&two {
                EdgeLabel::Infinity
            } else if (x + &two).signum().is_lt() {
                EdgeLabel::GramValue(x.clone())
            } else {
                return Err(not_coxeter(c));
            };
            d.set_edge(r, c, label);
        }
    }
    Ok(d)
}

/// `chi(big) / chi(small)`, the index of the corresponding subgroup when
/// one group contains the other.
pub fn index_relation(big: &CoxeterDiagram, small: &CoxeterDiagram) -> Result<BigRational, GlueError> {
    let s = euler_characteristic(small)?;
    if s.is_zero() {
        return Err(GlueError::ZeroEulerCharacteristic);
    }
    Ok(euler_characteristic(big)? / s)
}
