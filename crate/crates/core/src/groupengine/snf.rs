//! Smith normal form over the integers and abelianisation of presentations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::presentation::GroupPresentation;

/// Invariant factors `d1 | d2 | ...` of a relation matrix with `columns`
/// columns; the cokernel is `Z^free_rank + sum Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl SnfResult {
    /// Factors other than 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form of a dense matrix given by rows.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SnfResult {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &a[i][j] - &q * &a[i][t];
                    a[i][j] = v;
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = &a[t][j] + &a[i][j];
                            a[t][j] = v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    SnfResult { free_rank: cols - factors.len(), factors }
}

type SparseRow = BTreeMap<usize, BigInt>;

/// Exponent-sum relation matrix of a presentation, as sparse rows.
fn relation_rows(pres: &GroupPresentation) -> Vec<SparseRow> {
    pres.relators
        .iter()
        .map(|r| {
            let mut row = SparseRow::new();
            for &l in r {
                let g = l.unsigned_abs() as usize - 1;
                let e = row.entry(g).or_insert_with(BigInt::zero);
                *e += if l > 0 { 1 } else { -1 };
            }
            row.retain(|_, v| !v.is_zero());
            row
        })
        .filter(|r| !r.is_empty())
        .collect()
}

/// `H_1` of the presented group. Unit pivots are eliminated sparsely
/// (sparsest row first) before a dense Smith normal form of the rest.
pub fn abelianization(pres: &GroupPresentation) -> SnfResult {
    let cols = pres.generator_count;
    let mut rows = relation_rows(pres);
    let mut unit_pivots = 0usize;
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].push(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| alive[*i])
            .filter_map(|(i, r)| {
                r.iter().find(|(_, v)| v.abs().is_one()).map(|(&c, _)| (r.len(), i, c))
            })
            .min();
        let Some((_, pr, pc)) = pivot else { break };
        let prow = rows[pr].clone();
        let u = prow[&pc].clone();
        alive[pr] = false;
        let targets: Vec<usize> = std::mem::take(&mut col_rows[pc]);
        for i in targets {
            if !alive[i] || i == pr {
                continue;
            }
            let Some(coef) = rows[i].get(&pc).cloned() else { continue };
            // row_i -= coef * u * prow, which clears column pc
            let f = &coef * &u;
            for (&c, v) in &prow {
                let e = rows[i].entry(c).or_insert_with(BigInt::zero);
                let was_zero = e.is_zero();
                *e -= &f * v;
                if e.is_zero() {
                    rows[i].remove(&c);
                } else if was_zero {
                    col_rows[c].push(i);
                }
            }
        }
        unit_pivots += 1;
    }
    // remaining columns and rows
    let live_cols: Vec<usize> = {
        let mut used = vec![false; cols];
        for (i, r) in rows.iter().enumerate() {
            if alive[i] {
                for &c in r.keys() {
                    used[c] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(c, _)| c).collect()
    };
    let pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let dense: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .filter(|(i, r)| alive[*i] && !r.is_empty())
        .map(|(_, r)| {
            let mut d = vec![BigInt::zero(); live_cols.len()];
            for (c, v) in r {
                d[pos[c]] = v.clone();
            }
            d
        })
        .collect();
    let inner = smith_normal_form(&dense);
    let mut factors = vec![BigInt::one(); unit_pivots];
    factors.extend(inner.factors);
    SnfResult { free_rank: cols - factors.len(), factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            smith_normal_form(&big(&[&[2, 0], &[0, 3]])),
            SnfResult { factors: ints(&[1, 6]), free_rank: 0 }
        );
        assert_eq!(
            smith_normal_form(&big(&[&[0, 0, 0], &[0, 0, 0]])),
            SnfResult { factors: vec![], free_rank: 3 }
        );
        assert_eq!(
            smith_normal_form(&big(&[&[1, 0], &[0, 1]])),
            SnfResult { factors: ints(&[1, 1]), free_rank: 0 }
        );
        assert_eq!(smith_normal_form(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).factors, ints(&[2, 6, 12]));
    }

    #[test]
    fn abelianizations() {
        let p = GroupPresentation::new(1, vec![vec![1, 1]]);
        assert_eq!(abelianization(&p), SnfResult { factors: ints(&[2]), free_rank: 0 });
        let surface = GroupPresentation::new(4, vec![vec![1, 2, -1, -2, 3, 4, -3, -4]]);
        assert_eq!(abelianization(&surface).free_rank, 4);
        assert!(abelianization(&surface).torsion().is_empty());
        // <a, b | a^2, b^3, (ab)^5> is the perfect group A5
        let a5 = GroupPresentation::new(2, vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2, 1, 2, 1, 2, 1, 2]]);
        let r = abelianization(&a5);
        assert_eq!(r.free_rank, 0);
        assert!(r.torsion().is_empty());
        // Z/2 x Z/6 from mixed relators
        let p = GroupPresentation::new(2, vec![vec![1, 1, 2, 2], vec![2, 2, 2, 2, 2, 2, 1, 1, 1, 1]]);
        let r = abelianization(&p);
        let dense = smith_normal_form(&big(&[&[2, 2], &[4, 6]]));
        assert_eq!(r.torsion(), dense.torsion());
    }

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect()
    }

    /// gcd of all k x k minors
    fn minor_gcd(m: &[Vec<BigInt>], k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rs in subsets(m.len(), k) {
            for cs in subsets(m[0].len(), k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn factors_match_minor_gcds(entries in prop::collection::vec(-9i64..=9, 16)) {
            let m: Vec<Vec<BigInt>> = entries.chunks(4).map(|r| ints(r)).collect();
            let snf = smith_normal_form(&m);
            for w in snf.factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            let mut prod = BigInt::one();
            for k in 1..=4 {
                let g = minor_gcd(&m, k);
                if k <= snf.factors.len() {
                    prod *= &snf.factors[k - 1];
                    prop_assert_eq!(&prod, &g);
                } else {
                    prop_assert!(g.is_zero());
                }
            }
        }
    }
}
