//! The reflection lattice of a Coxeter polyhedron over the ring of integers
//! of the field generated by its cycle products.
//!
//! A basis word `(i1, ..., ir)` denotes `a_{0 i1} a_{i1 i2} ... a_{i(r-1) ir} e_{ir}`
//! where node 0 is the base node; the empty word denotes `e_0`.

use std::fmt;

use thiserror::Error;

use crate::coxdiagram::CoxeterDiagram;
use crate::linalg::{self, Matrix};
use crate::numberfield::{radicand, MultiQuadElement, NumberFieldError, QuadraticFieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VinbergError {
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("cycle products generate {0}, which is not rational or quadratic")]
    UnsupportedField(String),
    #[error("lattice Gram entry ({row}, {col}) = {value} is not integral")]
    NonIntegralEntry { row: usize, col: usize, value: String },
    #[error("lattice is not free on the chosen basis: {0}")]
    NotFreeLattice(String),
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisWord {
    /// Nodes visited after the base node.
    pub path: Vec<usize>,
}

impl BasisWord {
    pub fn new(path: Vec<usize>) -> Self {
        Self { path }
    }

    /// The node whose normal this word scales.
    pub fn last(&self) -> usize {
        self.path.last().copied().unwrap_or(0)
    }

    /// `a_{0 i1} a_{i1 i2} ... a_{i(r-1) ir}`
    pub fn coefficient(&self, gram: &[Vec<MultiQuadElement>]) -> MultiQuadElement {
        let mut c = MultiQuadElement::one();
        let mut prev = 0;
        for &i in &self.path {
            c = &c * &gram[prev][i];
            prev = i;
        }
        c
    }

    /// 1-based node indices.
    pub fn one_based(&self) -> Vec<usize> {
        self.path.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("v_")?;
        if self.path.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// The field generated by squared edge entries and products around a
/// fundamental cycle basis, as a squarefree radicand (1 for Q).
pub fn cycle_field(d: &CoxeterDiagram) -> Result<i64, VinbergError> {
    if !d.is_connected() {
        return Err(VinbergError::Disconnected);
    }
    let g = d.gram_matrix();
    let mut generators = Vec::new();
    for (i, j, _) in d.edges() {
        generators.push(&g[i][j] * &g[i][j]);
    }
    // BFS spanning tree; each non-tree edge closes one fundamental cycle.
    let n = d.node_count();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut order = vec![0];
    parent[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let u = order[k];
        for v in d.neighbours(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                depth[v] = depth[u] + 1;
                order.push(v);
            }
        }
        k += 1;
    }
    for (i, j, _) in d.edges() {
        if parent[i] == j || parent[j] == i {
            continue;
        }
        let mut prod = g[i][j].clone();
        let (mut a, mut b) = (i, j);
        while a != b {
            if depth[a] >= depth[b] {
                prod = &prod * &g[a][parent[a]];
                a = parent[a];
            } else {
                prod = &prod * &g[b][parent[b]];
                b = parent[b];
            }
        }
        generators.push(prod);
    }
    // The generated subfield is spanned by the radicals whose masks lie in
    // the F_2-span of the generators' supports.
    let mut span = vec![0usize];
    for x in &generators {
        for m in x.support() {
            if !span.contains(&m) {
                let new: Vec<usize> = span.iter().map(|s| s ^ m).collect();
                span.extend(new);
            }
        }
    }
    match span.len() {
        1 => Ok(1),
        2 => Ok(radicand(span[1])),
        _ => {
            let mut rads: Vec<String> =
                span.iter().filter(|&&m| m != 0).map(|&m| format!("sqrt({})", radicand(m))).collect();
            rads.sort();
            Err(VinbergError::UnsupportedField(format!("Q({})", rads.join(", "))))
        }
    }
}

/// Words from the backtracking walk from the base node, one per node.
pub fn walk_words(d: &CoxeterDiagram) -> Result<Vec<BasisWord>, VinbergError> {
    if !d.is_connected() || d.node_count() == 0 {
        return Err(VinbergError::Disconnected);
    }
    fn rec(d: &CoxeterDiagram, path: &mut Vec<usize>, covered: &mut [bool], out: &mut Vec<BasisWord>) {
        let last = path.last().copied().unwrap_or(0);
        for j in d.neighbours(last) {
            if !covered[j] {
                covered[j] = true;
                path.push(j);
                out.push(BasisWord::new(path.clone()));
                rec(d, path, covered, out);
                path.pop();
            }
        }
    }
    let mut covered = vec![false; d.node_count()];
    let mut out = Vec::new();
    rec(d, &mut Vec::new(), &mut covered, &mut out);
    if !covered[0] {
        out.insert(0, BasisWord::new(Vec::new()));
    }
    Ok(out)
}

/// The first words of the walk whose vectors are linearly independent,
/// as many as the rank of the Gram matrix.
pub fn spanning_sequence(d: &CoxeterDiagram) -> Result<Vec<BasisWord>, VinbergError> {
    let words = walk_words(d)?;
    let g = d.gram_matrix();
    // The normals span a nondegenerate space, so a set of them is
    // independent exactly when the matching Gram rows are.
    let mut kept: Vec<BasisWord> = Vec::new();
    let mut rows: Matrix<MultiQuadElement> = Vec::new();
    for w in words {
        rows.push(g[w.last()].clone());
        if linalg::rank(&rows) == rows.len() {
            kept.push(w);
        } else {
            rows.pop();
        }
    }
    Ok(kept)
}

fn coerce(x: &MultiQuadElement, field: i64) -> Result<QuadraticFieldElement, VinbergError> {
    Ok(QuadraticFieldElement::coerce(x, (field != 1).then_some(field))?)
}

/// `B(v_s, v_t)`; each entry is a closed-walk product through the base node.
pub fn basis_gram(
    d: &CoxeterDiagram,
    basis: &[BasisWord],
    field: i64,
) -> Result<Matrix<QuadraticFieldElement>, VinbergError> {
    let g = d.gram_matrix();
    let coeffs: Vec<MultiQuadElement> = basis.iter().map(|w| w.coefficient(&g)).collect();
    let mut out = Vec::with_capacity(basis.len());
    for (s, ws) in basis.iter().enumerate() {
        let mut row = Vec::with_capacity(basis.len());
        for (t, wt) in basis.iter().enumerate() {
            let x = &(&coeffs[s] * &coeffs[t]) * &g[ws.last()][wt.last()];
            let x = coerce(&x, field)?;
            if !x.is_integral() {
                return Err(VinbergError::NonIntegralEntry { row: s, col: t, value: x.to_string() });
            }
            row.push(x);
        }
        out.push(row);
    }
    Ok(out)
}

/// `(B(v_s, c e_i))_s`; each entry is a closed-walk product, so lies in k.
fn pairing(
    g: &[Vec<MultiQuadElement>],
    coeffs: &[MultiQuadElement],
    basis: &[BasisWord],
    c: &MultiQuadElement,
    i: usize,
    field: i64,
) -> Result<Vec<QuadraticFieldElement>, VinbergError> {
    basis
        .iter()
        .zip(coeffs)
        .map(|(w, cw)| coerce(&(&(cw * c) * &g[w.last()][i]), field))
        .collect()
}

/// Matrices of the reflections `r_i` acting on the basis, by columns:
/// `r_i(v_w) = v_w - v_{w.i}`.
pub fn reflection_matrices(
    d: &CoxeterDiagram,
    basis: &[BasisWord],
    field: i64,
    gram_k: &Matrix<QuadraticFieldElement>,
) -> Result<Vec<Matrix<QuadraticFieldElement>>, VinbergError> {
    let g = d.gram_matrix();
    let coeffs: Vec<MultiQuadElement> = basis.iter().map(|w| w.coefficient(&g)).collect();
    let n = basis.len();
    let zero = QuadraticFieldElement::zero(field);
    let one = QuadraticFieldElement::one(field);
    let mut out = Vec::with_capacity(d.node_count());
    for i in 0..d.node_count() {
        let mut m = vec![vec![zero.clone(); n]; n];
        for (s, ws) in basis.iter().enumerate() {
            // v_{w.i} = c_w a_{last, i} e_i
            let c = &coeffs[s] * &g[ws.last()][i];
            let x = if c.is_zero() {
                vec![zero.clone(); n]
            } else {
                let rhs = pairing(&g, &coeffs, basis, &c, i, field)?;
                linalg::solve(gram_k, &rhs).ok_or_else(|| {
                    VinbergError::NotFreeLattice("basis Gram matrix is singular".into())
                })?
            };
            for t in 0..n {
                let delta = if s == t { one.clone() } else { zero.clone() };
                let entry = &delta - &x[t];
                if !entry.is_integral() {
                    return Err(VinbergError::NotFreeLattice(format!(
                        "r_{} applied to {} has coordinate {} on {}",
                        i + 1,
                        ws,
                        entry,
                        basis[t]
                    )));
                }
                m[t][s] = entry;
            }
        }
        out.push(m);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct VinbergLattice {
    pub diagram: CoxeterDiagram,
    /// Squarefree radicand of k, 1 for Q.
    pub field: i64,
    pub basis: Vec<BasisWord>,
    pub gram_k: Matrix<QuadraticFieldElement>,
    /// One matrix per node, acting on basis coordinates (columns are images).
    pub reflections: Vec<Matrix<QuadraticFieldElement>>,
    pub signature: (usize, usize, usize),
}

impl VinbergLattice {
    pub fn build(d: &CoxeterDiagram) -> Result<Self, VinbergError> {
        let field = cycle_field(d)?;
        let basis = spanning_sequence(d)?;
        let gram_k = basis_gram(d, &basis, field)?;
        let signature = linalg::signature(&gram_k);
        if signature.2 != 0 {
            return Err(VinbergError::NotFreeLattice("basis Gram matrix is singular".into()));
        }
        let reflections = reflection_matrices(d, &basis, field, &gram_k)?;
        let lattice = Self { diagram: d.clone(), field, basis, gram_k, reflections, signature };
        lattice.check_extra_words()?;
        Ok(lattice)
    }

    /// Words left out of the basis must have integral coordinates in it.
    fn check_extra_words(&self) -> Result<(), VinbergError> {
        let g = self.diagram.gram_matrix();
        let coeffs: Vec<MultiQuadElement> = self.basis.iter().map(|w| w.coefficient(&g)).collect();
        for w in walk_words(&self.diagram)? {
            if self.basis.contains(&w) {
                continue;
            }
            let rhs = pairing(&g, &coeffs, &self.basis, &w.coefficient(&g), w.last(), self.field)?;
            let x = linalg::solve(&self.gram_k, &rhs).expect("invertible Gram");
            if let Some(bad) = x.iter().find(|c| !c.is_integral()) {
                return Err(VinbergError::NotFreeLattice(format!("{w} has coordinate {bad}")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coefficient `c_w` of each basis vector `v_w = c_w e_{last(w)}`.
    pub fn unit_coefficients(&self) -> Vec<MultiQuadElement> {
        let g = self.diagram.gram_matrix();
        self.basis.iter().map(|w| w.coefficient(&g)).collect()
    }
}
