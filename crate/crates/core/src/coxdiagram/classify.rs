//! Recognition of connected finite and affine Coxeter diagrams.

use num_bigint::BigUint;
use num_traits::One;

use super::{CoxeterDiagram, EdgeLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Finite { name: String, order: BigUint },
    Affine { name: String },
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComponent {
    pub name: String,
    pub nodes: Vec<usize>,
    pub order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeReport {
    pub components: Vec<FiniteComponent>,
    pub total_order: BigUint,
}

impl FiniteTypeReport {
    /// Component names joined by `x`, or `1` for the empty diagram.
    pub fn name(&self) -> String {
        if self.components.is_empty() {
            return "1".into();
        }
        self.components.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join("x")
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn pow2(n: usize) -> BigUint {
    BigUint::one() << n
}

fn finite(name: impl Into<String>, order: BigUint) -> ComponentKind {
    ComponentKind::Finite { name: name.into(), order }
}

fn affine(name: impl Into<String>) -> ComponentKind {
    ComponentKind::Affine { name: name.into() }
}

/// Classifies the subdiagram on `nodes`, which must be connected.
pub fn classify_component(d: &CoxeterDiagram, nodes: &[usize]) -> ComponentKind {
    let n = nodes.len();
    let sub = d.induced(nodes);
    if n == 1 {
        return finite("A1", BigUint::from(2u32));
    }
    let edges: Vec<(usize, usize, &EdgeLabel)> = sub.edges().collect();
    if edges.iter().any(|e| !matches!(e.2, EdgeLabel::Angle(_))) {
        if n == 2 && edges[0].2 == &EdgeLabel::Infinity {
            return affine("A~1");
        }
        return ComponentKind::Other;
    }
    let label = |i: usize, j: usize| match sub.edge(i, j) {
        Some(EdgeLabel::Angle(m)) => *m,
        _ => 2,
    };
    let deg: Vec<usize> = (0..n).map(|i| sub.neighbours(i).len()).collect();
    let all3 = edges.iter().all(|e| e.2 == &EdgeLabel::Angle(3));

    if edges.len() == n {
        if n >= 3 && all3 && deg.iter().all(|&k| k == 2) {
            return affine(format!("A~{}", n - 1));
        }
        return ComponentKind::Other;
    }
    if edges.len() != n - 1 {
        return ComponentKind::Other;
    }

    let branch: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
    match branch.as_slice() {
        [] => {
            let start = (0..n).find(|&i| deg[i] == 1).expect("a path has an end");
            let order = walk(&sub, start, None);
            let labels: Vec<u32> = order.windows(2).map(|w| label(w[0], w[1])).collect();
            classify_path(&labels)
        }
        [c] if deg[*c] == 3 => {
            let arms: Vec<Vec<u32>> = sub
                .neighbours(*c)
                .into_iter()
                .map(|nb| {
                    let path = walk(&sub, nb, Some(*c));
                    let mut labels = vec![label(*c, nb)];
                    labels.extend(path.windows(2).map(|w| label(w[0], w[1])));
                    labels
                })
                .collect();
            classify_star(arms)
        }
        [_] if n == 5 && all3 => affine("D~4"),
        [a, b] if all3 && deg[*a] == 3 && deg[*b] == 3 => {
            let leaves = |c: usize| sub.neighbours(c).iter().filter(|&&j| deg[j] == 1).count();
            if leaves(*a) == 2 && leaves(*b) == 2 {
                affine(format!("D~{}", n - 1))
            } else {
                ComponentKind::Other
            }
        }
        _ => ComponentKind::Other,
    }
}

/// Follows a path from `start`, away from `from`, while degrees allow.
fn walk(d: &CoxeterDiagram, start: usize, from: Option<usize>) -> Vec<usize> {
    let mut out = vec![start];
    let mut prev = from;
    let mut cur = start;
    loop {
        let next: Vec<usize> = d.neighbours(cur).into_iter().filter(|&j| Some(j) != prev).collect();
        match next.as_slice() {
            [j] => {
                prev = Some(cur);
                cur = *j;
                out.push(cur);
            }
            _ => return out,
        }
    }
}

fn classify_path(labels: &[u32]) -> ComponentKind {
    let n = labels.len() + 1;
    let rev: Vec<u32> = labels.iter().rev().copied().collect();
    let is = |pat: &[u32]| labels == pat || rev == pat;
    let inner3 = |l: &[u32]| l.iter().all(|&m| m == 3);
    if inner3(labels) {
        return finite(format!("A{n}"), factorial(n + 1));
    }
    if n == 2 {
        let m = labels[0];
        let name = match m {
            4 => "B2".to_string(),
            6 => "G2".to_string(),
            _ => format!("I2({m})"),
        };
        return finite(name, BigUint::from(2 * m));
    }
    let b_shape = |l: &[u32]| l[0] == 4 && inner3(&l[1..]);
    if b_shape(labels) || b_shape(&rev) {
        return finite(format!("B{n}"), pow2(n) * factorial(n));
    }
    if is(&[3, 4, 3]) {
        return finite("F4", BigUint::from(1152u32));
    }
    if is(&[5, 3]) {
        return finite("H3", BigUint::from(120u32));
    }
    if is(&[5, 3, 3]) {
        return finite("H4", BigUint::from(14400u32));
    }
    if labels[0] == 4 && labels[n - 2] == 4 && inner3(&labels[1..n - 2]) {
        return affine(format!("C~{}", n - 1));
    }
    if is(&[3, 3, 4, 3]) {
        return affine("F~4");
    }
    if is(&[6, 3]) {
        return affine("G~2");
    }
    ComponentKind::Other
}

/// Trees with one trivalent node; each arm lists labels outward from the centre.
fn classify_star(mut arms: Vec<Vec<u32>>) -> ComponentKind {
    arms.sort_by_key(|a| a.len());
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    let n = lens.iter().sum::<usize>() + 1;
    if arms.iter().all(|a| a.iter().all(|&m| m == 3)) {
        return match lens.as_slice() {
            [1, 1, _] => finite(format!("D{n}"), pow2(n - 1) * factorial(n)),
            [1, 2, 2] => finite("E6", BigUint::from(51840u32)),
            [1, 2, 3] => finite("E7", BigUint::from(2903040u32)),
            [1, 2, 4] => finite("E8", BigUint::from(696729600u32)),
            [2, 2, 2] => affine("E~6"),
            [1, 3, 3] => affine("E~7"),
            [1, 2, 5] => affine("E~8"),
            _ => ComponentKind::Other,
        };
    }
    // B~: two short arms of label 3, the third ending in a single 4.
    let fours = arms.iter().flatten().filter(|&&m| m == 4).count();
    let other = arms.iter().flatten().filter(|&&m| m != 3 && m != 4).count();
    if fours == 1 && other == 0 {
        let long = arms.iter().position(|a| *a.last().unwrap() == 4);
        if let Some(k) = long {
            let rest_short = arms.iter().enumerate().all(|(i, a)| i == k || a.len() == 1);
            if rest_short {
                return affine(format!("B~{}", n - 1));
            }
        }
    }
    ComponentKind::Other
}

/// The finite-type report, or `None` when some component is infinite.
pub fn finite_type(d: &CoxeterDiagram) -> Option<FiniteTypeReport> {
    let mut components = Vec::new();
    let mut total = BigUint::one();
    for nodes in d.components() {
        match classify_component(d, &nodes) {
            ComponentKind::Finite { name, order } => {
                total *= &order;
                components.push(FiniteComponent { name, nodes, order });
            }
            _ => return None,
        }
    }
    Some(FiniteTypeReport { components, total_order: total })
}

/// Whether each connected component (in `components()` order) is affine.
pub fn affine_type(d: &CoxeterDiagram) -> Vec<bool> {
    d.components()
        .iter()
        .map(|c| matches!(classify_component(d, c), ComponentKind::Affine { .. }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxdiagram::parse_diagram;
    use crate::linalg;

    fn order(text: &str) -> Option<u64> {
        finite_type(&parse_diagram(text).unwrap()).map(|r| r.total_order.try_into().unwrap())
    }

    #[test]
    fn finite_orders() {
        assert_eq!(order("[3,3,5]"), Some(14400));
        assert_eq!(order("[5,3]"), Some(120));
        assert_eq!(order("[3]"), Some(6));
        assert_eq!(order("[5,2,5]"), Some(100));
        assert_eq!(order("[3,3,3]"), Some(120));
        assert_eq!(order("[4,3,3]"), Some(384));
        assert_eq!(order("[3,3,4]"), Some(384));
        assert_eq!(order("[3,4,3]"), Some(1152));
        assert_eq!(order("[6]"), Some(12));
        assert_eq!(order("nodes=4; 1-2:3; 2-3:3; 2-4:3"), Some(192));
        assert_eq!(order("nodes=6; 1-2:3; 2-3:3; 3-4:3; 4-5:3; 3-6:3"), Some(51840));
        assert_eq!(order("[5,3,3,5]"), None);
        let r = finite_type(&parse_diagram("[3,2,5]").unwrap()).unwrap();
        assert_eq!(r.name(), "A2xI2(5)");
        assert_eq!(r.components[1].nodes, vec![2, 3]);
    }

    #[test]
    fn affine_recognition() {
        let cases = [
            ("nodes=2; 1-2:inf", true),
            ("nodes=3; 1-2:3; 2-3:3; 1-3:3", true),
            ("[4,4]", true),
            ("[4,3,4]", true),
            ("[6,3]", true),
            ("[3,3,4,3]", true),
            ("nodes=4; 1-2:3; 2-3:3; 2-4:4", true),
            ("nodes=5; 1-3:3; 2-3:3; 3-4:3; 4-5:4", true),
            ("nodes=5; 1-5:3; 2-5:3; 3-5:3; 4-5:3", true),
            ("nodes=6; 1-3:3; 2-3:3; 3-4:3; 4-5:3; 4-6:3", true),
            ("nodes=7; 1-2:3; 2-3:3; 3-4:3; 4-5:3; 3-6:3; 6-7:3", true),
            ("[3,3,5]", false),
            ("[5,3,3,5]", false),
            ("[5,5]", false),
        ];
        for (text, expected) in cases {
            assert_eq!(affine_type(&parse_diagram(text).unwrap()), vec![expected], "{text}");
        }
    }

    fn all_diagrams(n: usize) -> Vec<CoxeterDiagram> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let labels = [2u32, 3, 4, 5, 6];
        let mut out = Vec::new();
        let total = labels.len().pow(pairs.len() as u32);
        for mut code in 0..total {
            let mut d = CoxeterDiagram::new(n);
            for &(i, j) in &pairs {
                d.set_edge(i, j, EdgeLabel::Angle(labels[code % labels.len()]));
                code /= labels.len();
            }
            out.push(d);
        }
        out
    }

    /// Finite type exactly when the Gram matrix is positive definite; affine
    /// components are positive semidefinite with a one-dimensional kernel.
    #[test]
    fn recognition_matches_gram_signature() {
        for n in 1..=4 {
            for d in all_diagrams(n) {
                let sig = linalg::signature(&d.gram_matrix());
                assert_eq!(finite_type(&d).is_some(), sig == (n, 0, 0), "{d}");
                if d.is_connected() && affine_type(&d) == vec![true] {
                    assert_eq!(sig, (n - 1, 0, 1), "{d}");
                }
                if d.is_connected() && sig == (n - 1, 0, 1) {
                    assert_eq!(affine_type(&d), vec![true], "{d}");
                }
            }
        }
    }

    /// Five-node trees and cycles drawn from a deterministic sample.
    #[test]
    fn recognition_matches_gram_signature_five_nodes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let labels = [2u32, 3, 3, 3, 4, 5, 6];
        for _ in 0..3000 {
            let mut d = CoxeterDiagram::new(5);
            for i in 0..5 {
                for j in i + 1..5 {
                    let m = if rng.gen_bool(0.6) { 2 } else { labels[rng.gen_range(0..labels.len())] };
                    d.set_edge(i, j, EdgeLabel::Angle(m));
                }
            }
            let sig = linalg::signature(&d.gram_matrix());
            assert_eq!(finite_type(&d).is_some(), sig == (5, 0, 0), "{d}");
            if d.is_connected() {
                assert_eq!(affine_type(&d) == vec![true], sig == (4, 0, 1), "{d}");
            }
        }
    }
}
