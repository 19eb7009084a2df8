//! Dense matrices over exact ordered fields.

use std::cmp::Ordering;

use crate::numberfield::{MultiQuadElement, QuadraticFieldElement};

/// An exact field with a decidable real embedding.
pub trait ExactScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, o: &Self) -> Self;
    fn signum(&self) -> Ordering;
}

impl ExactScalar for QuadraticFieldElement {
    fn zero_like(&self) -> Self {
        QuadraticFieldElement::zero(self.d())
    }
    fn one_like(&self) -> Self {
        QuadraticFieldElement::one(self.d())
    }
    fn is_zero(&self) -> bool {
        QuadraticFieldElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn signum(&self) -> Ordering {
        QuadraticFieldElement::signum(self)
    }
}

impl ExactScalar for MultiQuadElement {
    fn zero_like(&self) -> Self {
        MultiQuadElement::zero()
    }
    fn one_like(&self) -> Self {
        MultiQuadElement::one()
    }
    fn is_zero(&self) -> bool {
        MultiQuadElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self * &o.inverse().expect("division by zero")
    }
    fn signum(&self) -> Ordering {
        MultiQuadElement::signum(self)
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: ExactScalar>(n: usize, like: &T) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { like.one_like() } else { like.zero_like() }).collect())
        .collect()
}

pub fn mat_mul<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = a[i][0].zero_like();
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            acc = acc.add(&a[i][t].mul(&b[t][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &Matrix<T>) -> Matrix<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, by congruence
/// diagonalisation with symmetric pivoting.
pub fn signature<T: ExactScalar>(m: &Matrix<T>) -> (usize, usize, usize) {
    let mut a = m.clone();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // All remaining diagonal entries vanish: fold an off-diagonal
                // entry onto the diagonal via x_i <- x_i + x_j.
                let pair = active.iter().find_map(|&i| {
                    active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                for &k in &active {
                    let v = a[i][k].add(&a[j][k]);
                    a[i][k] = v;
                }
                for &k in &active {
                    let v = a[k][i].add(&a[k][j]);
                    a[k][i] = v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        match d.signum() {
            Ordering::Greater => pos += 1,
            Ordering::Less => neg += 1,
            Ordering::Equal => unreachable!(),
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            if a[i][pivot].is_zero() {
                continue;
            }
            let f = a[i][pivot].div(&d);
            for &j in &active {
                let v = a[i][j].sub(&f.mul(&a[pivot][j]));
                a[i][j] = v;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

/// Row-echelon reduction; returns the rank and the determinant when square.
fn eliminate<T: ExactScalar>(m: &Matrix<T>) -> (usize, Option<T>) {
    let mut a = m.clone();
    let rows = a.len();
    if rows == 0 {
        return (0, None);
    }
    let cols = a[0].len();
    let mut det = a[0][0].one_like();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            det = det.zero_like().sub(&det);
        }
        let pv = a[rank][c].clone();
        det = det.mul(&pv);
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].div(&pv);
            for k in c..cols {
                let v = a[r][k].sub(&f.mul(&a[rank][k]));
                a[r][k] = v;
            }
        }
        rank += 1;
    }
    let det = (rows == cols).then(|| if rank < rows { det.zero_like() } else { det });
    (rank, det)
}

pub fn rank<T: ExactScalar>(m: &Matrix<T>) -> usize {
    eliminate(m).0
}

pub fn determinant<T: ExactScalar>(m: &Matrix<T>) -> T {
    eliminate(m).1.expect("determinant of a non-square matrix")
}

/// Solves `m x = rhs` for invertible square `m`.
pub fn solve<T: ExactScalar>(m: &Matrix<T>, rhs: &[T]) -> Option<Vec<T>> {
    let n = m.len();
    let mut a: Matrix<T> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let pv = a[c][c].clone();
        for k in c..=n {
            let v = a[c][k].div(&pv);
            a[c][k] = v;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let v = a[r][k].sub(&f.mul(&a[c][k]));
                a[r][k] = v;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QuadraticFieldElement {
        QuadraticFieldElement::from_int(n, 5)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<QuadraticFieldElement> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn signature_of_lorentzian_and_degenerate_forms() {
        assert_eq!(signature(&qm(&[&[1, 0], &[0, -1]])), (1, 1, 0));
        // hyperbolic plane with zero diagonal
        assert_eq!(signature(&qm(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(signature(&qm(&[&[2, -2], &[-2, 2]])), (1, 0, 1));
        assert_eq!(signature(&qm(&[&[0, 0], &[0, 0]])), (0, 0, 2));
    }

    #[test]
    fn solve_and_determinant() {
        let m = qm(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&m), q(5));
        let x = solve(&m, &[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert_eq!(rank(&qm(&[&[1, 2], &[2, 4]])), 1);
        assert!(solve(&qm(&[&[1, 2], &[2, 4]]), &[q(1), q(1)]).is_none());
    }
}
