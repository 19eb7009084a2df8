use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::classify::finite_type;
use super::{CoxeterDiagram, DiagramError, EdgeLabel};
use crate::linalg;

fn term(size: usize, order: num_bigint::BigUint) -> BigRational {
    let sign = if size % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    BigRational::new(sign, BigInt::from(order))
}

/// A subset the table rejects must not have a positive definite Gram matrix.
fn check_rejected(d: &CoxeterDiagram, nodes: &[usize]) -> Result<(), DiagramError> {
    let sub = d.induced(nodes);
    if sub.edges().any(|(_, _, l)| !matches!(l, EdgeLabel::Angle(_))) {
        return Ok(());
    }
    if linalg::signature(&sub.gram_matrix()) == (nodes.len(), 0, 0) {
        return Err(DiagramError::UnclassifiableSubdiagram(nodes.to_vec()));
    }
    Ok(())
}

/// `sum over S with W_S finite of (-1)^|S| / |W_S|`.
///
/// Walks subsets in increasing node order and stops extending a subset once
/// it is infinite, since every superset is then infinite too.
pub fn euler_characteristic(d: &CoxeterDiagram) -> Result<BigRational, DiagramError> {
    fn rec(
        d: &CoxeterDiagram,
        start: usize,
        cur: &mut Vec<usize>,
        acc: &mut BigRational,
    ) -> Result<(), DiagramError> {
        for i in start..d.node_count() {
            cur.push(i);
            match finite_type(&d.induced(cur)) {
                Some(r) => {
                    *acc += term(cur.len(), r.total_order);
                    rec(d, i + 1, cur, acc)?;
                }
                None => check_rejected(d, cur)?,
            }
            cur.pop();
        }
        Ok(())
    }
    let mut acc = BigRational::one();
    rec(d, 0, &mut Vec::new(), &mut acc)?;
    Ok(acc)
}

/// The same sum over all `2^n` subsets without pruning.
pub fn euler_characteristic_brute_force(d: &CoxeterDiagram) -> BigRational {
    let n = d.node_count();
    assert!(n < 32);
    let mut acc = BigRational::zero();
    for mask in 0u32..(1 << n) {
        let nodes: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if let Some(r) = finite_type(&d.induced(&nodes)) {
            acc += term(nodes.len(), r.total_order);
        }
    }
    acc
}
