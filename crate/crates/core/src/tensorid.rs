//! The four-dimensional plus-type orthogonal space over F_p as the tensor
//! square of the natural symplectic plane, so that orientation-preserving
//! isometries of spinor norm one become pairs of 2x2 matrices of
//! determinant 1, modulo `(-I, -I)`.

use thiserror::Error;

use crate::finred::{normal_basis_change, FiniteRepresentation};
use crate::fqmatrix::FqMatrix;
use crate::groupengine::GroupElement;
use crate::numberfield::{FiniteField, PrimeIdealData};
use crate::vinberg::VinbergLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("matrix does not decompose as a tensor pair: {0}")]
    DecompositionFailure(String),
    #[error("identification is not an isometry onto the quotient form")]
    NotIsometry,
    #[error("lattice basis is not a rescaling of the node normals modulo the prime")]
    NoNormalBasis,
    #[error("tensor frames need a four-dimensional quotient over a prime field")]
    Shape,
}

fn negate(f: FiniteField, m: &FqMatrix) -> FqMatrix {
    let rows: Vec<Vec<u32>> = m.rows().iter().map(|r| r.iter().map(|&x| f.neg(x)).collect()).collect();
    FqMatrix::from_rows(f, &rows)
}

/// `m` or `-m`, whichever has its first nonzero entry in `1..=(p-1)/2`.
fn sign_normalized(m: &FqMatrix) -> FqMatrix {
    let f = m.field();
    let first = m.entries().iter().copied().find(|&x| x != 0).unwrap_or(0);
    if first > (f.characteristic() - 1) / 2 {
        negate(f, m)
    } else {
        m.clone()
    }
}

/// `(sigma, tau)` with both determinants 1, up to simultaneous negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPair {
    pub sigma: FqMatrix,
    pub tau: FqMatrix,
}

impl MatrixPair {
    /// The canonical representative of `+-(sigma, tau)`.
    pub fn new(sigma: FqMatrix, tau: FqMatrix) -> Self {
        assert!(sigma.n() == 2 && tau.n() == 2);
        assert!(sigma.det() == 1 && tau.det() == 1, "pair entries need determinant 1");
        let normalized = sign_normalized(&sigma);
        if normalized == sigma {
            Self { sigma, tau }
        } else {
            let f = tau.field();
            Self { sigma: normalized, tau: negate(f, &tau) }
        }
    }

    pub fn identity(f: FiniteField) -> Self {
        Self::new(FqMatrix::identity(f, 2), FqMatrix::identity(f, 2))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.sigma.mul(&o.sigma), self.tau.mul(&o.tau))
    }

    /// `sigma` up to sign, as an element of `PSL(2, p)`.
    pub fn first_factor(&self) -> Psl2 {
        Psl2::new(self.sigma.clone())
    }

    /// `tau` normalised so that `sigma = I`, when `sigma = +-I`.
    pub fn second_factor(&self) -> Option<FqMatrix> {
        let f = self.sigma.field();
        let id = FqMatrix::identity(f, 2);
        if self.sigma == id {
            Some(self.tau.clone())
        } else if self.sigma == negate(f, &id) {
            Some(negate(f, &self.tau))
        } else {
            None
        }
    }
}

impl std::fmt::Display for MatrixPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.sigma, self.tau)
    }
}

impl GroupElement for MatrixPair {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// An element of `PSL(2, p)`, stored sign-normalised.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Psl2(FqMatrix);

impl Psl2 {
    pub fn new(m: FqMatrix) -> Self {
        Self(sign_normalized(&m))
    }

    pub fn identity(f: FiniteField) -> Self {
        Self(FqMatrix::identity(f, 2))
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.0
    }
}

impl GroupElement for Psl2 {
    fn op(&self, other: &Self) -> Self {
        Self::new(self.0.mul(&other.0))
    }
}

/// Kronecker product on the basis `n_a (x) n_b`, index `2a + b`.
pub fn kron(a: &FqMatrix, b: &FqMatrix) -> FqMatrix {
    let f = a.field();
    let mut m = FqMatrix::zero(f, 4);
    for r in 0..4 {
        for c in 0..4 {
            m.set(r, c, f.mul(a.get(r / 2, c / 2), b.get(r % 2, c % 2)));
        }
    }
    m
}

pub fn tensor_action(pair: &MatrixPair) -> FqMatrix {
    kron(&pair.sigma, &pair.tau)
}

/// The symplectic form `f(x, y) = x1 y2 - x2 y1` on the plane.
pub fn symplectic_form(f: FiniteField) -> FqMatrix {
    FqMatrix::from_ints(f, &[&[0, 1], &[-1, 0]])
}

/// `g(v1 (x) v2, w1 (x) w2) = f(v1, w1) f(v2, w2)`.
pub fn tensor_form(f: FiniteField) -> FqMatrix {
    let j = symplectic_form(f);
    kron(&j, &j)
}

/// `v (x) w -> w (x) v`.
pub fn swap_rho(f: FiniteField) -> FqMatrix {
    FqMatrix::from_ints(f, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
}

/// Solves `m = sigma (x) tau` with determinant-1 factors; `None` when `m`
/// is not such a product.
pub fn decompose(m: &FqMatrix) -> Option<MatrixPair> {
    assert_eq!(m.n(), 4);
    let f = m.field();
    let block = |a: usize, c: usize| {
        FqMatrix::from_rows(
            f,
            &[
                vec![m.get(2 * a, 2 * c), m.get(2 * a, 2 * c + 1)],
                vec![m.get(2 * a + 1, 2 * c), m.get(2 * a + 1, 2 * c + 1)],
            ],
        )
    };
    let blocks: Vec<(usize, usize)> = (0..2).flat_map(|a| (0..2).map(move |c| (a, c))).collect();
    let &(a0, c0) = blocks.iter().find(|&&(a, c)| !block(a, c).entries().iter().all(|&x| x == 0))?;
    let tau0 = block(a0, c0);
    // position of a nonzero entry of tau0 to read ratios from
    let k = tau0.entries().iter().position(|&x| x != 0).unwrap();
    let pivot_inv = f.inv(tau0.entries()[k]).unwrap();
    let mut sigma0 = FqMatrix::zero(f, 2);
    for &(a, c) in &blocks {
        let b = block(a, c);
        let s = f.mul(b.entries()[k], pivot_inv);
        if b.entries().iter().zip(tau0.entries()).any(|(&x, &t)| x != f.mul(s, t)) {
            return None;
        }
        sigma0.set(a, c, s);
    }
    // rescale: sigma = l sigma0, tau = tau0 / l with l^2 det(sigma0) = 1
    let ds = sigma0.det();
    let dt = tau0.det();
    if ds == 0 || f.mul(ds, dt) != 1 {
        return None;
    }
    let target = f.inv(ds).unwrap();
    let l = f.elements().find(|&x| f.mul(x, x) == target)?;
    let li = f.inv(l).unwrap();
    let scale = |m: &FqMatrix, s: u32| {
        let rows: Vec<Vec<u32>> = m.rows().iter().map(|r| r.iter().map(|&x| f.mul(x, s)).collect()).collect();
        FqMatrix::from_rows(f, &rows)
    };
    Some(MatrixPair::new(scale(&sigma0, l), scale(&tau0, li)))
}

/// An isometry from the tensor space `(U, g)` onto the quotient space `W`.
#[derive(Clone, Debug)]
pub struct TensorFrame {
    /// Columns are the images of the tensor basis in `W` coordinates.
    pub identification: FqMatrix,
    inverse: FqMatrix,
}

impl TensorFrame {
    pub fn new(form_w: &FqMatrix, identification: FqMatrix) -> Result<Self, TensorError> {
        let f = form_w.field();
        if form_w.n() != 4 || f.degree() != 1 {
            return Err(TensorError::Shape);
        }
        let inverse = identification.inverse().ok_or(TensorError::NotIsometry)?;
        if identification.transpose().mul(form_w).mul(&identification) != tensor_form(f) {
            return Err(TensorError::NotIsometry);
        }
        Ok(Self { identification, inverse })
    }

    /// The matrix of a map on `W` in the tensor basis.
    pub fn to_tensor(&self, m: &FqMatrix) -> FqMatrix {
        self.inverse.mul(m).mul(&self.identification)
    }

    /// The pair of an element of `W`'s isometry group.
    pub fn pair(&self, m: &FqMatrix) -> Result<MatrixPair, TensorError> {
        let t = self.to_tensor(m);
        decompose(&t).ok_or_else(|| TensorError::DecompositionFailure(t.to_string()))
    }
}

/// Projects vectors given in node-normal coordinates into the quotient
/// coordinates of `rep`.
pub fn normal_to_quotient(
    lattice: &VinbergLattice,
    p: &PrimeIdealData,
    rep: &FiniteRepresentation,
    vectors: &[Vec<i64>],
) -> Result<Vec<Vec<u32>>, TensorError> {
    let f = rep.field;
    let change = normal_basis_change(lattice, p).ok_or(TensorError::NoNormalBasis)?;
    let inv = change.inverse().ok_or(TensorError::NoNormalBasis)?;
    Ok(vectors
        .iter()
        .map(|v| {
            let e: Vec<u32> = v.iter().map(|&x| f.from_i64(x)).collect();
            let mut x = inv.apply(&e);
            for r in &rep.radical_basis {
                let pc = r.iter().position(|&c| c != 0).unwrap();
                let c = x[pc];
                for (xk, &rk) in x.iter_mut().zip(r) {
                    *xk = f.sub(*xk, f.mul(c, rk));
                }
            }
            rep.quotient.coords.iter().map(|&c| x[c]).collect()
        })
        .collect())
}

/// Images of `n1(x)n1, n1(x)n2, n2(x)n1, n2(x)n2` for the `[5,3,3,5]`
/// simplex modulo `sqrt 5`, in node-normal coordinates: `g1, g2, -h2, h1`
/// with `g1 = e1 - e2`, `h1 = -e1 + e2 + e3`, `g2 = e1 + 2e5`,
/// `h2 = -e1 + 2e5`.
pub fn davis_tensor_basis() -> Vec<Vec<i64>> {
    vec![vec![1, -1, 0, 0, 0], vec![1, 0, 0, 0, 2], vec![1, 0, 0, 0, -2], vec![-1, 1, 1, 0, 0]]
}

pub fn davis_frame(
    lattice: &VinbergLattice,
    p: &PrimeIdealData,
    rep: &FiniteRepresentation,
) -> Result<TensorFrame, TensorError> {
    if rep.quotient.dim() != 4 {
        return Err(TensorError::Shape);
    }
    let cols = normal_to_quotient(lattice, p, rep, &davis_tensor_basis())?;
    let mut t = FqMatrix::zero(rep.field, 4);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            t.set(i, j, x);
        }
    }
    TensorFrame::new(&rep.quotient.form, t)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coxdiagram::delta3;
    use crate::finred::reduce;
    use crate::groupengine::{enumerate, DEFAULT_CAP};
    use crate::numberfield::splitting;

    fn f5() -> FiniteField {
        FiniteField::prime(5)
    }

    fn random_sl2(rng: &mut ChaCha8Rng) -> FqMatrix {
        loop {
            let rows: Vec<Vec<u32>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(0..5)).collect()).collect();
            let m = FqMatrix::from_rows(f5(), &rows);
            if m.det() == 1 {
                return m;
            }
        }
    }

    fn random_pair(rng: &mut ChaCha8Rng) -> MatrixPair {
        MatrixPair::new(random_sl2(rng), random_sl2(rng))
    }

    #[test]
    fn tensor_action_basics() {
        let f = f5();
        let id = FqMatrix::identity(f, 2);
        let minus = negate(f, &id);
        assert!(tensor_action(&MatrixPair::identity(f)).is_identity());
        assert!(kron(&minus, &minus).is_identity());
        assert_eq!(MatrixPair::new(minus.clone(), minus), MatrixPair::identity(f));
        let rho = swap_rho(f);
        assert_eq!(rho.det(), 4);
        assert!(rho.mul(&rho).is_identity());
        assert!(rho.preserves(&tensor_form(f)));
        assert_eq!(decompose(&rho), None);
    }

    #[test]
    fn random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = tensor_form(f5());
        let rho = swap_rho(f5());
        for _ in 0..100 {
            let p = random_pair(&mut rng);
            let q = random_pair(&mut rng);
            let a = tensor_action(&p);
            assert!(a.preserves(&g));
            assert_eq!(a.det(), 1);
            assert_eq!(a.mul(&tensor_action(&q)), tensor_action(&p.mul(&q)));
            assert_eq!(decompose(&a), Some(p.clone()));
            let swapped = MatrixPair::new(p.tau.clone(), p.sigma.clone());
            assert_eq!(rho.mul(&a).mul(&rho), tensor_action(&swapped));
        }
    }

    #[test]
    fn omega_has_7200_elements() {
        let f = f5();
        let id = FqMatrix::identity(f, 2);
        let s = FqMatrix::from_ints(f, &[&[1, 1], &[0, 1]]);
        let t = FqMatrix::from_ints(f, &[&[1, 0], &[1, 1]]);
        let gens: Vec<FqMatrix> = [(&s, &id), (&t, &id), (&id, &s), (&id, &t)]
            .iter()
            .map(|(a, b)| kron(a, b))
            .collect();
        let omega = enumerate(&gens, FqMatrix::identity(f, 4), DEFAULT_CAP).unwrap();
        assert_eq!(omega.order(), 7200);
        let pairs: HashSet<MatrixPair> = omega.elements().iter().map(|m| decompose(m).unwrap()).collect();
        assert_eq!(pairs.len(), 7200);
    }

    #[test]
    fn psl_and_sl_factors() {
        let f = f5();
        let s = FqMatrix::from_ints(f, &[&[1, 1], &[0, 1]]);
        let t = FqMatrix::from_ints(f, &[&[1, 0], &[1, 1]]);
        let psl = enumerate(&[Psl2::new(s.clone()), Psl2::new(t.clone())], Psl2::identity(f), DEFAULT_CAP).unwrap();
        assert_eq!(psl.order(), 60);
        let sl = enumerate(&[s.clone(), t], FqMatrix::identity(f, 2), DEFAULT_CAP).unwrap();
        assert_eq!(sl.order(), 120);
        let minus = negate(f, &FqMatrix::identity(f, 2));
        let p = MatrixPair::new(minus, s.clone());
        assert_eq!(p.second_factor(), Some(negate(f, &s)));
        assert_eq!(MatrixPair::identity(f).second_factor(), Some(FqMatrix::identity(f, 2)));
        assert_eq!(MatrixPair::identity(f).first_factor(), Psl2::identity(f));
        assert_eq!(MatrixPair::new(s.clone(), s).second_factor(), None);
    }

    #[test]
    fn delta3_image_is_omega_extended_by_rho() {
        let d = delta3();
        let l = VinbergLattice::build(&d).unwrap();
        let p = splitting(5, 5).unwrap();
        let rep = reduce(&l, &p).unwrap();
        let frame = davis_frame(&l, &p, &rep).unwrap();
        let gens: Vec<FqMatrix> = rep.quotient.generators.iter().map(|g| frame.to_tensor(g)).collect();
        assert_eq!(gens[4], swap_rho(f5()));
        let image = enumerate(&gens, FqMatrix::identity(f5(), 4), DEFAULT_CAP).unwrap();
        assert_eq!(image.order(), 14400);
        let (det_one, det_minus): (Vec<&FqMatrix>, Vec<&FqMatrix>) =
            image.elements().iter().partition(|m| m.det() == 1);
        assert_eq!(det_one.len(), 7200);
        assert_eq!(det_minus.len(), 7200);
        // the determinant-1 half is Omega rather than all of SO
        assert!(det_one.iter().all(|m| decompose(m).is_some()));
        // x = r5 r4, y = r5 r3, z = r5 r2, w = r5 r1 as pairs
        for i in 0..4 {
            let m = rep.quotient.generators[4].mul(&rep.quotient.generators[3 - i]);
            let pair = frame.pair(&m).unwrap();
            assert_eq!(tensor_action(&pair), frame.to_tensor(&m));
        }
    }
}
