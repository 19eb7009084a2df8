//! Reduction of the reflection lattice modulo a prime ideal: the quadratic
//! space over the residue field, its radical and nondegenerate quotient, and
//! the classification of that quotient.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use thiserror::Error;

use crate::fqmatrix::{kernel, rank, rref, FqMatrix};
use crate::linalg::Matrix;
use crate::numberfield::{
    FiniteField, NumberFieldError, PrimeIdealData, QuadraticFieldElement,
};
use crate::vinberg::VinbergLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinredError {
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
    #[error("prime ideal lies over Q(sqrt {found}), lattice field is Q(sqrt {expected})")]
    FieldMismatch { expected: i64, found: i64 },
    #[error("reduced generator {0} does not preserve the reduced form")]
    NotOrthogonal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("forms in characteristic 2 are not classified")]
    CharacteristicTwo,
    #[error("form is degenerate")]
    Degenerate,
    #[error("isotropic search exceeded {0} vectors")]
    CapExceeded(usize),
}

/// The nondegenerate quotient `W` of the reduced space by its radical.
/// `coords` are the basis positions spanning `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub coords: Vec<usize>,
    pub form: FqMatrix,
    pub generators: Vec<FqMatrix>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Clone, Debug)]
pub struct FiniteRepresentation {
    pub field: FiniteField,
    /// Reduced lattice Gram matrix.
    pub form: FqMatrix,
    /// Reduced reflections, one per node.
    pub generators: Vec<FqMatrix>,
    /// Radical basis in reduced row echelon form.
    pub radical_basis: Vec<Vec<u32>>,
    pub quotient: Quotient,
}

fn reduce_matrix(
    m: &Matrix<QuadraticFieldElement>,
    p: &PrimeIdealData,
) -> Result<FqMatrix, NumberFieldError> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|x| p.residue(x).map(|e| e.code)).collect())
        .collect::<Result<Vec<Vec<u32>>, _>>()?;
    Ok(FqMatrix::from_rows(p.field(), &rows))
}

/// Entrywise reduction of the lattice Gram matrix and reflections.
pub fn reduce(lattice: &VinbergLattice, p: &PrimeIdealData) -> Result<FiniteRepresentation, FinredError> {
    if p.d() != lattice.field {
        return Err(FinredError::FieldMismatch { expected: lattice.field, found: p.d() });
    }
    let form = reduce_matrix(&lattice.gram_k, p)?;
    let generators = lattice
        .reflections
        .iter()
        .map(|r| reduce_matrix(r, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteRepresentation::new(form, generators)?)
}

impl FiniteRepresentation {
    /// Checks orthogonality and computes the radical and quotient.
    pub fn new(form: FqMatrix, generators: Vec<FqMatrix>) -> Result<Self, FinredError> {
        if let Some(i) = generators.iter().position(|g| !g.preserves(&form)) {
            return Err(FinredError::NotOrthogonal(i));
        }
        let radical_basis = radical(&form);
        let quotient = quotient_rep(&form, &generators, &radical_basis);
        Ok(Self { field: form.field(), form, generators, radical_basis, quotient })
    }

    pub fn dim(&self) -> usize {
        self.form.n()
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }
}

/// Basis of `{v : F v = 0}` in reduced row echelon form.
pub fn radical(form: &FqMatrix) -> Vec<Vec<u32>> {
    let mut k = kernel(form);
    rref(form.field(), &mut k);
    k
}

/// Restricts to the coordinate complement of the radical's pivot columns,
/// projecting along the radical.
pub fn quotient_rep(form: &FqMatrix, generators: &[FqMatrix], radical_basis: &[Vec<u32>]) -> Quotient {
    let f = form.field();
    let n = form.n();
    let pivots: Vec<usize> = radical_basis
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("zero radical vector"))
        .collect();
    let coords: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let induced = |g: &FqMatrix| {
        let mut out = FqMatrix::zero(f, coords.len());
        for (j, &cj) in coords.iter().enumerate() {
            let mut e = vec![0; n];
            e[cj] = 1;
            let mut y = g.apply(&e);
            for (r, &pc) in radical_basis.iter().zip(&pivots) {
                let c = y[pc];
                if c != 0 {
                    for (yk, &rk) in y.iter_mut().zip(r) {
                        *yk = f.sub(*yk, f.mul(c, rk));
                    }
                }
            }
            for (i, &ci) in coords.iter().enumerate() {
                out.set(i, j, y[ci]);
            }
        }
        out
    };
    Quotient {
        form: form.restrict(&coords),
        generators: generators.iter().map(induced).collect(),
        coords,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn sign(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Plus => "+",
            Epsilon::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClass {
    pub dim: usize,
    pub witt_index: usize,
    /// Present for even dimension.
    pub epsilon: Option<Epsilon>,
    /// Whether the determinant of the Gram matrix is a square.
    pub discriminant_square: bool,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.epsilon {
            Some(e) => write!(f, "O{}{}", self.dim, e),
            None => write!(
                f,
                "O{} (disc {})",
                self.dim,
                if self.discriminant_square { "square" } else { "nonsquare" }
            ),
        }
    }
}

pub const DEFAULT_ISOTROPIC_CAP: usize = 1_000_000;

/// `Q(x) = B(x, x) / 2` up to the factor, so isotropy is `B(x, x) = 0`.
fn isotropic_in(form: &FqMatrix, basis: &[Vec<u32>], budget: &mut usize, cap: usize) -> Result<Option<Vec<u32>>, ClassifyError> {
    let f = form.field();
    let q = f.order();
    let k = basis.len();
    let n = form.n();
    // projective points: leading coefficient 1 at position `lead`
    for lead in 0..k {
        let free = k - lead - 1;
        let count = (q as u64).pow(free as u32);
        for mut code in 0..count {
            if *budget == 0 {
                return Err(ClassifyError::CapExceeded(cap));
            }
            *budget -= 1;
            let mut x = basis[lead].clone();
            for b in &basis[lead + 1..] {
                let c = (code % q as u64) as u32;
                code /= q as u64;
                if c != 0 {
                    for t in 0..n {
                        x[t] = f.add(x[t], f.mul(c, b[t]));
                    }
                }
            }
            if form.bilinear(&x, &x) == 0 {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// Splits off hyperbolic pairs until the remaining space is anisotropic.
pub fn classify_form(form: &FqMatrix, cap: usize) -> Result<FormClass, ClassifyError> {
    let f = form.field();
    if f.characteristic() == 2 {
        return Err(ClassifyError::CharacteristicTwo);
    }
    let n = form.n();
    let det = form.det();
    if det == 0 {
        return Err(ClassifyError::Degenerate);
    }
    let mut basis: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut budget = cap;
    let mut witt_index = 0;
    while let Some(x) = isotropic_in(form, &basis, &mut budget, cap)? {
        let y = basis
            .iter()
            .find(|b| form.bilinear(&x, b) != 0)
            .expect("nondegenerate subspace")
            .clone();
        let s = f.inv(form.bilinear(&x, &y)).unwrap();
        let y: Vec<u32> = y.iter().map(|&c| f.mul(c, s)).collect();
        // h = y - B(y, y)/2 x is isotropic with B(x, h) = 1
        let half = f.div(form.bilinear(&y, &y), 2).unwrap();
        let h: Vec<u32> = y.iter().zip(&x).map(|(&a, &b)| f.sub(a, f.mul(half, b))).collect();
        let mut rest: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| {
                let bh = form.bilinear(b, &h);
                let bx = form.bilinear(b, &x);
                (0..n).map(|t| f.sub(f.sub(b[t], f.mul(bh, x[t])), f.mul(bx, h[t]))).collect()
            })
            .collect();
        rref(f, &mut rest);
        basis = rest;
        witt_index += 1;
    }
    debug_assert!(basis.len() <= 2, "anisotropic part of dimension {}", basis.len());
    let epsilon = (n % 2 == 0).then(|| if 2 * witt_index == n { Epsilon::Plus } else { Epsilon::Minus });
    Ok(FormClass { dim: n, witt_index, epsilon, discriminant_square: f.is_square(det) })
}

/// `|O_{2m+1}(q)| = 2 q^{m^2} prod (q^{2i} - 1)` and
/// `|O^e_{2m}(q)| = 2 q^{m(m-1)} (q^m - e) prod_{i<m} (q^{2i} - 1)`.
/// Panics for even dimension without `epsilon`.
pub fn orthogonal_group_order(dim: usize, q: u32, epsilon: Option<Epsilon>) -> BigUint {
    if dim == 0 {
        return BigUint::one();
    }
    let q = BigUint::from(q);
    let m = dim / 2;
    let prod = |upto: usize| -> BigUint {
        (1..upto).map(|i| Pow::pow(&q, 2 * i as u32) - 1u32).product()
    };
    if dim % 2 == 1 {
        BigUint::from(2u32) * Pow::pow(&q, (m * m) as u32) * prod(m + 1)
    } else {
        let qm = Pow::pow(&q, m as u32);
        let twist = match epsilon.expect("even dimension needs epsilon") {
            Epsilon::Plus => qm - 1u32,
            Epsilon::Minus => qm + 1u32,
        };
        BigUint::from(2u32) * Pow::pow(&q, (m * (m - 1)) as u32) * twist * prod(m)
    }
}

/// Change of coordinates from the lattice basis to the node normals, when
/// each node is scaled exactly once by a coefficient that is a unit mod `p`.
/// Returns `C` with `e_coords = C * lattice_coords`.
pub fn normal_basis_change(lattice: &VinbergLattice, p: &PrimeIdealData) -> Option<FqMatrix> {
    let n = lattice.dim();
    if lattice.diagram.node_count() != n {
        return None;
    }
    let mut c = FqMatrix::zero(p.field(), n);
    let d = (lattice.field != 1).then_some(lattice.field);
    for (s, (w, coeff)) in lattice.basis.iter().zip(lattice.unit_coefficients()).enumerate() {
        let x = QuadraticFieldElement::coerce(&coeff, d).ok()?;
        let r = p.residue(&x).ok()?.code;
        if r == 0 || c.get(w.last(), s) != 0 {
            return None;
        }
        c.set(w.last(), s, r);
    }
    (rank(p.field(), &c.rows()) == n).then_some(c)
}

/// The reduced form in node-normal coordinates, `C^-T F C^-1`.
pub fn normal_form(rep: &FiniteRepresentation, change: &FqMatrix) -> FqMatrix {
    let inv = change.inverse().expect("invertible basis change");
    inv.transpose().mul(&rep.form).mul(&inv)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::*;
    use crate::coxdiagram::delta3;
    use crate::groupengine::{enumerate, DEFAULT_CAP};
    use crate::numberfield::splitting;

    fn f(p: u32) -> FiniteField {
        FiniteField::prime(p)
    }

    fn hyperbolic(q: u32, pairs: usize) -> FqMatrix {
        let n = 2 * pairs;
        let mut m = FqMatrix::zero(f(q), n);
        for k in 0..pairs {
            m.set(2 * k, 2 * k + 1, 1);
            m.set(2 * k + 1, 2 * k, 1);
        }
        m
    }

    fn delta3_mod_sqrt5() -> (VinbergLattice, PrimeIdealData, FiniteRepresentation) {
        let l = VinbergLattice::build(&delta3()).unwrap();
        let p = splitting(5, 5).unwrap();
        let rep = reduce(&l, &p).unwrap();
        (l, p, rep)
    }

    #[test]
    fn delta3_reduction() {
        let (l, p, rep) = delta3_mod_sqrt5();
        assert_eq!(rep.q(), 5);
        assert_eq!(rep.dim(), 5);
        assert_eq!(rep.radical_basis.len(), 1);
        let c = normal_basis_change(&l, &p).unwrap();
        // form with B(x, x) = 2 q(x) for the quadratic form
        // x1^2 + 2x1x2 + x2^2 - x2x3 + x3^2 - x3x4 + x4^2 + 2x4x5 + x5^2
        let expected = FqMatrix::from_ints(
            f(5),
            &[&[2, 2, 0, 0, 0], &[2, 2, -1, 0, 0], &[0, -1, 2, -1, 0], &[0, 0, -1, 2, 2], &[0, 0, 0, 2, 2]],
        );
        assert_eq!(normal_form(&rep, &c), expected);
        let v0 = c.apply(&rep.radical_basis[0]);
        let s = f(5).inv(v0[0]).unwrap();
        let v0: Vec<i64> = v0.iter().map(|&x| f(5).centered(f(5).mul(x, s))).collect();
        assert_eq!(v0, vec![1, -1, 0, 1, -1]);

        let w = &rep.quotient;
        assert_eq!(w.dim(), 4);
        assert_ne!(w.form.det(), 0);
        for g in &w.generators {
            assert!(g.preserves(&w.form));
            assert!(g.mul(g).is_identity());
        }
        let class = classify_form(&w.form, DEFAULT_ISOTROPIC_CAP).unwrap();
        assert_eq!((class.dim, class.witt_index, class.epsilon), (4, 2, Some(Epsilon::Plus)));
    }

    #[test]
    fn delta3_split_and_inert_reductions() {
        let l = VinbergLattice::build(&delta3()).unwrap();
        let p11 = splitting(11, 5).unwrap();
        let rep = reduce(&l, &p11).unwrap();
        assert_eq!(rep.generators.len(), 5);
        assert!(rep.radical_basis.is_empty());
        assert_eq!(rep.quotient.dim(), 5);
        assert_eq!(rep.quotient.form, rep.form);
        let p2 = splitting(2, 5).unwrap();
        let rep2 = reduce(&l, &p2).unwrap();
        assert_eq!(rep2.q(), 4);
        assert_eq!(classify_form(&rep2.quotient.form, 10).unwrap_err(), ClassifyError::CharacteristicTwo);
    }

    #[test]
    fn wrong_field_is_rejected() {
        let l = VinbergLattice::build(&delta3()).unwrap();
        let p = splitting(7, 2).unwrap();
        assert!(matches!(reduce(&l, &p), Err(FinredError::FieldMismatch { .. })));
    }

    #[test]
    fn trivial_cases() {
        let id = FqMatrix::identity(f(7), 3);
        let rep = FiniteRepresentation::new(id.clone(), vec![id.clone()]).unwrap();
        assert!(rep.radical_basis.is_empty());
        assert_eq!(rep.quotient.generators[0], id);
        assert_eq!(rep.quotient.form, id);
        let c = classify_form(&hyperbolic(7, 1), 100).unwrap();
        assert_eq!((c.witt_index, c.epsilon), (1, Some(Epsilon::Plus)));
        let c = classify_form(&FqMatrix::identity(f(3), 2), 100).unwrap();
        assert_eq!((c.witt_index, c.epsilon), (0, Some(Epsilon::Minus)));
        let bad = FqMatrix::from_ints(f(5), &[&[0, 1], &[0, 0]]);
        assert!(matches!(
            FiniteRepresentation::new(FqMatrix::identity(f(5), 2), vec![bad]),
            Err(FinredError::NotOrthogonal(0))
        ));
        assert_eq!(classify_form(&FqMatrix::zero(f(5), 2), 100).unwrap_err(), ClassifyError::Degenerate);
    }

    #[test]
    fn isotropic_search_cap() {
        // anisotropic planes are searched exhaustively
        let m = FqMatrix::identity(f(11), 2);
        assert_eq!(classify_form(&m, 3).unwrap_err(), ClassifyError::CapExceeded(3));
    }

    #[test]
    fn group_orders() {
        assert_eq!(orthogonal_group_order(4, 5, Some(Epsilon::Plus)), BigUint::from(28800u32));
        assert_eq!(orthogonal_group_order(4, 5, Some(Epsilon::Plus)), BigUint::from(2u32 * 3600 * 2 * 2));
        assert_eq!(orthogonal_group_order(1, 7, None), BigUint::from(2u32));
        assert_eq!(orthogonal_group_order(2, 5, Some(Epsilon::Plus)), BigUint::from(8u32));
        assert_eq!(orthogonal_group_order(2, 5, Some(Epsilon::Minus)), BigUint::from(12u32));
        assert_eq!(orthogonal_group_order(3, 5, None), BigUint::from(240u32));
    }

    fn all_matrices(q: u32, n: usize) -> impl Iterator<Item = FqMatrix> {
        let total = (q as u64).pow((n * n) as u32);
        (0..total).map(move |mut code| {
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let c = (code % q as u64) as u32;
                            code /= q as u64;
                            c
                        })
                        .collect()
                })
                .collect();
            FqMatrix::from_rows(f(q), &rows)
        })
    }

    #[test]
    fn small_orthogonal_groups_by_enumeration() {
        for (q, eps, form) in [
            (5, Epsilon::Plus, hyperbolic(5, 1)),
            (5, Epsilon::Minus, FqMatrix::from_ints(f(5), &[&[2, 0], &[0, 4]])),
            (3, Epsilon::Minus, FqMatrix::identity(f(3), 2)),
        ] {
            let count = all_matrices(q, 2).filter(|g| g.preserves(&form)).count();
            assert_eq!(BigUint::from(count), orthogonal_group_order(2, q, Some(eps)));
            assert_eq!(classify_form(&form, 1000).unwrap().epsilon, Some(eps));
        }
        let form = FqMatrix::identity(f(3), 3);
        let count = all_matrices(3, 3).filter(|g| g.preserves(&form)).count();
        assert_eq!(BigUint::from(count), orthogonal_group_order(3, 3, None));
    }

    /// Reflection in an anisotropic vector.
    fn reflection(form: &FqMatrix, v: &[u32]) -> FqMatrix {
        let fld = form.field();
        let n = form.n();
        let fv = form.apply(v);
        let s = fld.div(2, form.bilinear(v, v)).unwrap();
        let mut m = FqMatrix::identity(fld, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, fld.sub(m.get(i, j), fld.mul(s, fld.mul(v[i], fv[j]))));
            }
        }
        m
    }

    #[test]
    fn plus_type_four_dimensional_group_over_f5() {
        let form = hyperbolic(5, 2);
        let fld = f(5);
        let mut gens = Vec::new();
        let mut seen = HashSet::new();
        for code in 1..625u32 {
            let v: Vec<u32> = (0..4).map(|k| code / 5u32.pow(k) % 5).collect();
            let lead = v.iter().find(|&&x| x != 0).copied().unwrap();
            let v: Vec<u32> = v.iter().map(|&x| fld.div(x, lead).unwrap()).collect();
            if form.bilinear(&v, &v) != 0 && seen.insert(v.clone()) {
                gens.push(reflection(&form, &v));
            }
        }
        assert!(gens.iter().all(|g| g.preserves(&form)));
        let table = enumerate(&gens, FqMatrix::identity(fld, 4), DEFAULT_CAP).unwrap();
        assert_eq!(table.order(), 28800);
        assert_eq!(BigUint::from(table.order()), orthogonal_group_order(4, 5, Some(Epsilon::Plus)));
    }

    /// Number of `x` (zero included) with `B(x, x) = 0`.
    fn isotropic_count(form: &FqMatrix) -> u64 {
        let q = form.field().order() as u64;
        let n = form.n();
        (0..q.pow(n as u32))
            .filter(|&code| {
                let x: Vec<u32> = (0..n).map(|k| (code / q.pow(k as u32) % q) as u32).collect();
                form.bilinear(&x, &x) == 0
            })
            .count() as u64
    }

    fn expected_isotropic(class: &FormClass, q: u64) -> u64 {
        let n = class.dim as u32;
        match class.epsilon {
            None => q.pow(n - 1),
            Some(e) => {
                let m = n / 2;
                let base = q.pow(n - 1) as i64;
                (base + e.sign() * (q.pow(m) as i64 - q.pow(m - 1) as i64)) as u64
            }
        }
    }

    fn symmetric(q: u32, n: usize, entries: &[u32]) -> FqMatrix {
        let mut m = FqMatrix::zero(f(q), n);
        let mut it = entries.iter();
        for i in 0..n {
            for j in i..n {
                let x = *it.next().unwrap() % q;
                m.set(i, j, x);
                m.set(j, i, x);
            }
        }
        m
    }

    #[test]
    fn classification_matches_isotropic_counts_over_f3() {
        for n in 1..=4usize {
            let slots = n * (n + 1) / 2;
            for code in 0..3u32.pow(slots as u32) {
                let entries: Vec<u32> = (0..slots).map(|k| code / 3u32.pow(k as u32) % 3).collect();
                let form = symmetric(3, n, &entries);
                if form.det() == 0 {
                    continue;
                }
                let class = classify_form(&form, DEFAULT_ISOTROPIC_CAP).unwrap();
                assert_eq!(isotropic_count(&form), expected_isotropic(&class, 3), "{form}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn classification_matches_isotropic_counts_over_f5(
            n in 1usize..=4,
            entries in prop::collection::vec(0u32..5, 10),
        ) {
            let form = symmetric(5, n, &entries);
            prop_assume!(form.det() != 0);
            let class = classify_form(&form, DEFAULT_ISOTROPIC_CAP).unwrap();
            prop_assert!(2 * class.witt_index <= n);
            prop_assert_eq!(isotropic_count(&form), expected_isotropic(&class, 5));
        }
    }
}
