//! Square matrices and vectors over a finite field.

use std::fmt;

use crate::numberfield::FiniteField;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    field: FiniteField,
    n: usize,
    /// Row-major entries.
    data: Vec<u32>,
}

impl FqMatrix {
    pub fn zero(field: FiniteField, n: usize) -> Self {
        Self { field, n, data: vec![0; n * n] }
    }

    pub fn identity(field: FiniteField, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(field: FiniteField, rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
        let data = rows.iter().flatten().map(|&x| x % field.order()).collect();
        Self { field, n, data }
    }

    /// Entries given as integers, reduced into the prime field.
    pub fn from_ints(field: FiniteField, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<u32>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, &rows)
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.n.max(1)).map(<[u32]>::to_vec).take(self.n).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.n)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let f = self.field;
        let n = self.n;
        let mut out = Self::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = o.data[k * n + j];
                    if b != 0 {
                        let idx = i * n + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        (0..self.n)
            .map(|i| (0..self.n).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self) -> u32 {
        let f = self.field;
        let mut a = self.rows();
        let n = self.n;
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
                return 0;
            };
            if p != c {
                a.swap(p, c);
                det = f.neg(det);
            }
            det = f.mul(det, a[c][c]);
            let inv = f.inv(a[c][c]).unwrap();
            for r in c + 1..n {
                if a[r][c] == 0 {
                    continue;
                }
                let factor = f.mul(a[r][c], inv);
                for k in c..n {
                    a[r][k] = f.sub(a[r][k], f.mul(factor, a[c][k]));
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        let f = self.field;
        let n = self.n;
        let mut a = self.rows();
        let mut b = Self::identity(f, n).rows();
        for c in 0..n {
            let p = (c..n).find(|&r| a[r][c] != 0)?;
            a.swap(p, c);
            b.swap(p, c);
            let inv = f.inv(a[c][c]).unwrap();
            for k in 0..n {
                a[c][k] = f.mul(a[c][k], inv);
                b[c][k] = f.mul(b[c][k], inv);
            }
            for r in 0..n {
                if r == c || a[r][c] == 0 {
                    continue;
                }
                let factor = a[r][c];
                for k in 0..n {
                    a[r][k] = f.sub(a[r][k], f.mul(factor, a[c][k]));
                    b[r][k] = f.sub(b[r][k], f.mul(factor, b[c][k]));
                }
            }
        }
        Some(Self::from_rows(f, &b))
    }

    /// Whether `self^T form self = form`.
    pub fn preserves(&self, form: &Self) -> bool {
        self.transpose().mul(form).mul(self) == *form
    }

    /// Submatrix on the given rows and columns (which must have equal length).
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let rows: Vec<Vec<u32>> =
            idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j)).collect()).collect();
        Self::from_rows(self.field, &rows)
    }

    /// `B(x, y) = x^T self y`.
    pub fn bilinear(&self, x: &[u32], y: &[u32]) -> u32 {
        let f = self.field;
        dot(f, x, &self.apply(y))
    }
}

pub fn dot(f: FiniteField, x: &[u32], y: &[u32]) -> u32 {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: FiniteField, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(p, r);
        let inv = f.inv(rows[r][c]).unwrap();
        for k in 0..cols {
            rows[r][k] = f.mul(rows[r][k], inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let factor = rows[i][c];
            for k in 0..cols {
                let v = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
                rows[i][k] = v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: FiniteField, rows: &[Vec<u32>]) -> usize {
    let mut r = rows.to_vec();
    rref(f, &mut r).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, with a 1 in that
/// column.
pub fn kernel(m: &FqMatrix) -> Vec<Vec<u32>> {
    let f = m.field();
    let n = m.n();
    let mut rows = m.rows();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][fc]);
            }
            v
        })
        .collect()
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let parts: Vec<String> = row.iter().map(|&x| self.field.fmt_element(x)).collect();
            f.write_str(&parts.join(" "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = FiniteField::prime(5);
        let m = FqMatrix::from_ints(f, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        // 1*(1 - 0) - 2*(0 - 3) = 7
        assert_eq!(m.det(), 2);
        // 1*(1 - 0) - 2*(0 - 12) = 25
        let sing = FqMatrix::from_ints(f, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        assert_eq!(sing.det(), 0);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn kernel_vectors() {
        let f = FiniteField::prime(7);
        let m = FqMatrix::from_ints(f, &[&[1, 1, 0], &[0, 0, 0], &[1, 1, 0]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
        assert_eq!(rank(f, &k), 2);
    }

    #[test]
    fn extension_field_entries() {
        let f = FiniteField::quadratic(2);
        let t = f.t();
        let m = FqMatrix::from_rows(f, &[vec![t, 1], vec![1, 0]]);
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert_eq!(m.pow(3).det(), f.pow(m.det(), 3));
    }
}
