//! Oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxred_core::coxdiagram::{parse_diagram, CoxeterDiagram, EdgeLabel};
use coxred_core::groupengine::{
    abelianization, enumerate, reidemeister_schreier, schreier_coset_table, smith_normal_form, GroupElement,
    Permutation, DEFAULT_CAP, DEFAULT_RELATOR_BUDGET,
};
use coxred_core::linalg::{identity, mat_mul, transpose};
use coxred_core::numberfield::{splitting, QuadraticFieldElement};
use coxred_core::vinberg::VinbergLattice;

/// Involution, isometry and braid relations of the lattice reflections.
pub fn reflection_checks(l: &VinbergLattice) -> Result<(), String> {
    let n = l.dim();
    let id = identity(n, &l.gram_k[0][0]);
    for (i, r) in l.reflections.iter().enumerate() {
        if mat_mul(r, r) != id {
            return Err(format!("r{} squared is not the identity", i + 1));
        }
        if mat_mul(&mat_mul(&transpose(r), &l.gram_k), r) != l.gram_k {
            return Err(format!("r{} does not preserve the Gram matrix", i + 1));
        }
    }
    let nodes = l.diagram.node_count();
    for i in 0..nodes {
        for j in i + 1..nodes {
            let m = match l.diagram.edge(i, j) {
                None => 2,
                Some(EdgeLabel::Angle(m)) => *m,
                Some(_) => continue,
            };
            let prod = mat_mul(&l.reflections[i], &l.reflections[j]);
            let mut acc = id.clone();
            for _ in 0..m {
                acc = mat_mul(&acc, &prod);
            }
            if acc != id {
                return Err(format!("(r{} r{})^{m} is not the identity", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Random connected diagrams on 3 to 5 nodes; only those whose lattice
/// builds are returned, `count` of them.
pub fn random_supported_lattices(count: usize, seed: u64) -> Vec<VinbergLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = [EdgeLabel::Angle(3), EdgeLabel::Angle(4), EdgeLabel::Angle(5), EdgeLabel::Angle(6), EdgeLabel::Infinity];
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for _ in 0..20_000 {
        if out.len() == count {
            break;
        }
        let n = rng.gen_range(3..=5);
        let mut d = CoxeterDiagram::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.45) {
                    d.set_edge(i, j, labels[rng.gen_range(0..labels.len())].clone());
                }
            }
        }
        if !d.is_connected() || !seen.insert(d.to_string()) {
            continue;
        }
        if let Ok(l) = VinbergLattice::build(&d) {
            out.push(l);
        }
    }
    out
}

fn integral(d: i64, u: i64, v: i64) -> QuadraticFieldElement {
    if d % 4 == 1 {
        QuadraticFieldElement::halves(2 * u + (v & 1), v, d)
    } else {
        QuadraticFieldElement::from_ints(u, v, d)
    }
}

/// Residue maps respect sums and products on random integral elements.
pub fn residue_homomorphism_samples(samples: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [2i64, 3, 5, 13];
    let primes = [2u32, 3, 5, 7, 11, 13, 29, 31];
    for _ in 0..samples {
        let d = fields[rng.gen_range(0..fields.len())];
        let p = primes[rng.gen_range(0..primes.len())];
        let data = splitting(p, d).map_err(|e| e.to_string())?;
        let mut draw = || integral(d, rng.gen_range(-60..60), rng.gen_range(-60..60));
        let x = draw();
        let y = draw();
        let rx = data.residue(&x).map_err(|e| e.to_string())?;
        let ry = data.residue(&y).map_err(|e| e.to_string())?;
        if data.residue(&(&x * &y)).unwrap() != rx.mul(ry) || data.residue(&(&x + &y)).unwrap() != rx.add(ry) {
            return Err(format!("residue mod {p} in Q(sqrt {d}) fails on {x}, {y}"));
        }
    }
    Ok(())
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let t = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors against gcds of minors on random matrices.
pub fn snf_against_minors(samples: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<BigInt>> =
            (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()).collect();
        let snf = smith_normal_form(&m);
        let mut prod = BigInt::one();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<BigInt>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if k <= snf.factors.len() {
                prod *= &snf.factors[k - 1];
                if prod != g {
                    return Err(format!("{m:?}: product of first {k} factors {prod} but minor gcd {g}"));
                }
            } else if !g.is_zero() {
                return Err(format!("{m:?}: rank too small"));
            }
        }
        if snf.free_rank != cols - snf.factors.len() {
            return Err(format!("{m:?}: free rank"));
        }
    }
    Ok(())
}

/// Element-order census of `K / [K, K]` for the kernel `K` of the map
/// `faithful[i] -> target[i]`.
fn brute_census(faithful: &[Permutation], target: &[Permutation]) -> BTreeMap<usize, usize> {
    let id = Permutation::identity(faithful[0].0.len());
    let w = enumerate(faithful, id.clone(), DEFAULT_CAP).unwrap();
    let t = enumerate(target, Permutation::identity(target[0].0.len()), DEFAULT_CAP).unwrap();
    let kernel: Vec<Permutation> = w
        .words()
        .iter()
        .enumerate()
        .filter(|(_, word)| t.evaluate(word) == 0)
        .map(|(i, _)| w.element(i).clone())
        .collect();
    let comms: Vec<Permutation> = kernel
        .iter()
        .flat_map(|a| kernel.iter().map(move |b| a.inverse().op(&b.inverse()).op(a).op(b)))
        .collect();
    let derived: HashSet<Permutation> = enumerate(&comms, id, DEFAULT_CAP).unwrap().elements().iter().cloned().collect();
    let mut census = BTreeMap::new();
    for k in &kernel {
        let mut x = k.clone();
        let mut m = 1;
        while !derived.contains(&x) {
            x = x.op(k);
            m += 1;
        }
        *census.entry(m).or_insert(0) += 1;
    }
    census.values_mut().for_each(|c| *c /= derived.len());
    census
}

fn abelian_census(factors: &[usize]) -> BTreeMap<usize, usize> {
    let mut orders = vec![1usize];
    for &d in factors {
        orders = orders
            .iter()
            .flat_map(|&o| (0..d).map(move |x| o.lcm(&(d / x.gcd(&d)))))
            .collect();
    }
    let mut census = BTreeMap::new();
    for o in orders {
        *census.entry(o).or_insert(0) += 1;
    }
    census
}

fn perm(v: &[u32]) -> Permutation {
    Permutation(v.to_vec())
}

/// Reidemeister–Schreier abelianisations against brute-force kernels for
/// every quotient map used, on `I2(5)` and `A3`; returns the number of cases.
pub fn rs_against_brute_force() -> Result<usize, String> {
    let dihedral = vec![perm(&[0, 4, 3, 2, 1]), perm(&[1, 0, 4, 3, 2])];
    let s4 = vec![perm(&[1, 0, 2, 3]), perm(&[0, 2, 1, 3]), perm(&[0, 1, 3, 2])];
    let sign = perm(&[1, 0]);
    let cases: Vec<(&str, Vec<Permutation>, Vec<Permutation>)> = vec![
        ("[5]", dihedral.clone(), vec![perm(&[0]); 2]),
        ("[5]", dihedral.clone(), vec![sign.clone(); 2]),
        ("[5]", dihedral.clone(), dihedral.clone()),
        ("[3,3]", s4.clone(), vec![perm(&[0]); 3]),
        ("[3,3]", s4.clone(), vec![sign.clone(); 3]),
        ("[3,3]", s4.clone(), vec![perm(&[1, 0, 2]), perm(&[0, 2, 1]), perm(&[1, 0, 2])]),
    ];
    for (text, faithful, target) in &cases {
        let pres = parse_diagram(text).unwrap().coxeter_presentation();
        let (table, _) = schreier_coset_table(&pres, target, Permutation::identity(target[0].0.len()), DEFAULT_CAP)
            .map_err(|e| e.to_string())?;
        if table.index() > 12 {
            return Err(format!("{text}: index {} above 12", table.index()));
        }
        let rs = reidemeister_schreier(&pres, &table, DEFAULT_RELATOR_BUDGET).map_err(|e| e.to_string())?;
        let ab = abelianization(&rs.presentation);
        if ab.free_rank != 0 {
            return Err(format!("{text}: finite kernel with free rank {}", ab.free_rank));
        }
        let factors: Vec<usize> = ab.torsion().iter().map(|d| d.to_usize().unwrap()).collect();
        if abelian_census(&factors) != brute_census(faithful, target) {
            return Err(format!("{text} index {}: abelianisation {factors:?} disagrees", table.index()));
        }
    }
    Ok(cases.len())
}
