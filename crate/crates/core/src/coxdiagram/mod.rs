//! Coxeter diagrams: text syntax, Gram matrices, type recognition, Coxeter
//! presentations and Euler characteristics.
//!
//! Nodes are 0-based in the API and 1-based in text.

mod classify;
mod euler;

pub use classify::{affine_type, classify_component, finite_type, ComponentKind, FiniteComponent, FiniteTypeReport};
pub use euler::{euler_characteristic, euler_characteristic_brute_force};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::groupengine::GroupPresentation;
use crate::numberfield::text::Cursor;
use crate::numberfield::{MultiQuadElement, TextError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("parse error: {0}")]
    Parse(#[from] TextError),
    #[error("bad label at byte {position}: {message}")]
    Label { position: usize, message: String },
    #[error("subdiagram on nodes {0:?} is positive definite but unrecognised")]
    UnclassifiableSubdiagram(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// Dihedral angle pi/m, m >= 3.
    Angle(u32),
    /// Parallel faces; Gram entry -2.
    Infinity,
    /// Ultraparallel faces with Gram entry v < -2.
    GramValue(MultiQuadElement),
}

impl EdgeLabel {
    pub fn gram_entry(&self) -> MultiQuadElement {
        match self {
            EdgeLabel::Angle(m) => {
                MultiQuadElement::neg_two_cos_pi_over(*m).expect("labels are at most 6")
            }
            EdgeLabel::Infinity => MultiQuadElement::from_int(-2),
            EdgeLabel::GramValue(v) => v.clone(),
        }
    }

    pub fn finite_order(&self) -> Option<u32> {
        match self {
            EdgeLabel::Angle(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Angle(m) => write!(f, "{m}"),
            EdgeLabel::Infinity => f.write_str("inf"),
            EdgeLabel::GramValue(v) => write!(f, "g={v}"),
        }
    }
}

/// Nodes plus labelled edges; an absent pair is orthogonal (label 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterDiagram {
    node_count: usize,
    edges: BTreeMap<(usize, usize), EdgeLabel>,
}

impl CoxeterDiagram {
    pub fn new(node_count: usize) -> Self {
        Self { node_count, edges: BTreeMap::new() }
    }

    /// A path with the given labels; label 2 leaves consecutive nodes unjoined.
    pub fn linear(labels: &[u32]) -> Self {
        let mut d = Self::new(labels.len() + 1);
        for (i, &m) in labels.iter().enumerate() {
            if m != 2 {
                d.set_edge(i, i + 1, EdgeLabel::Angle(m));
            }
        }
        d
    }

    /// Sets the label between `i` and `j`. Panics on a self-edge, a node out
    /// of range, or a label outside the supported set.
    pub fn set_edge(&mut self, i: usize, j: usize, label: EdgeLabel) {
        assert!(i != j && i < self.node_count && j < self.node_count);
        match &label {
            EdgeLabel::Angle(2) => {
                self.edges.remove(&(i.min(j), i.max(j)));
                return;
            }
            EdgeLabel::Angle(m) => assert!((3..=6).contains(m), "unsupported label {m}"),
            EdgeLabel::Infinity => {}
            EdgeLabel::GramValue(v) => {
                assert!((v + &MultiQuadElement::from_int(2)).signum().is_lt())
            }
        }
        self.edges.insert((i.min(j), i.max(j)), label);
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&EdgeLabel> {
        self.edges.get(&(i.min(j), i.max(j)))
    }

    /// Edges with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &EdgeLabel)> {
        self.edges.iter().map(|(&(i, j), l)| (i, j, l))
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.node_count).filter(|&j| j != i && self.edge(i, j).is_some()).collect()
    }

    /// Connected components, each sorted, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.node_count];
        let mut out = Vec::new();
        for s in 0..self.node_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                for j in self.neighbours(comp[k]) {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subdiagram on `nodes`, renumbered in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Self {
        let mut d = Self::new(nodes.len());
        for (a, &i) in nodes.iter().enumerate() {
            for (b, &j) in nodes.iter().enumerate().skip(a + 1) {
                if let Some(l) = self.edge(i, j) {
                    d.edges.insert((a.min(b), a.max(b)), l.clone());
                }
            }
        }
        d
    }

    /// The Gram matrix: 2 on the diagonal and `-2cos(pi/m)`, `-2` or the
    /// given value off it.
    pub fn gram_matrix(&self) -> Vec<Vec<MultiQuadElement>> {
        let n = self.node_count;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            MultiQuadElement::from_int(2)
                        } else {
                            self.edge(i, j).map_or_else(MultiQuadElement::zero, EdgeLabel::gram_entry)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Standard Coxeter presentation: `r_i^2` and `(r_i r_j)^m` for each pair
    /// with finite label `m`, orthogonal pairs included.
    pub fn coxeter_presentation(&self) -> GroupPresentation {
        let n = self.node_count;
        let mut rels = Vec::new();
        for i in 0..n {
            let g = i as i32 + 1;
            rels.push(vec![g, g]);
        }
        for i in 0..n {
            for j in i + 1..n {
                let m = match self.edge(i, j) {
                    None => 2,
                    Some(l) => match l.finite_order() {
                        Some(m) => m,
                        None => continue,
                    },
                };
                let (a, b) = (i as i32 + 1, j as i32 + 1);
                rels.push((0..m).flat_map(|_| [a, b]).collect());
            }
        }
        GroupPresentation::new(n, rels)
    }

    /// All node subsets of size `node_count - corank` in lexicographic order,
    /// with their induced diagrams.
    pub fn parabolic_subdiagrams(&self, corank: usize) -> Vec<(Vec<usize>, CoxeterDiagram)> {
        assert!(corank <= self.node_count);
        let k = self.node_count - corank;
        subsets_of_size(self.node_count, k)
            .into_iter()
            .map(|s| {
                let d = self.induced(&s);
                (s, d)
            })
            .collect()
    }

    /// Bracket form when the diagram is the path 1-2-...-n with angle labels.
    pub fn linear_symbol(&self) -> Option<String> {
        if self.node_count < 2 {
            return None;
        }
        let mut labels = Vec::new();
        for i in 0..self.node_count - 1 {
            match self.edge(i, i + 1) {
                None => labels.push(2),
                Some(EdgeLabel::Angle(m)) => labels.push(*m),
                Some(_) => return None,
            }
        }
        let path_edges = labels.iter().filter(|&&m| m != 2).count();
        if path_edges != self.edges.len() {
            return None;
        }
        Some(format!(
            "[{}]",
            labels.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        ))
    }
}

pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Canonical text: `nodes=N; i-j:label; ...` with 1-based nodes.
impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nodes={}", self.node_count)?;
        for (i, j, l) in self.edges() {
            write!(f, "; {}-{}:{}", i + 1, j + 1, l)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for CoxeterDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        parse_diagram(s)
    }
}

/// Parses `[m1,m2,...]` or `nodes=N; i-j:label; ...`.
pub fn parse_diagram(text: &str) -> Result<CoxeterDiagram, DiagramError> {
    let mut c = Cursor::new(text, 0);
    let d = if c.eat("[") {
        let mut labels = Vec::new();
        loop {
            c.skip_ws();
            let at = c.position();
            let m = c.small_integer()?;
            labels.push(check_angle(m, at)?);
            if c.eat("]") {
                break;
            }
            c.expect(",")?;
        }
        CoxeterDiagram::linear(&labels)
    } else if c.eat("nodes=") {
        c.skip_ws();
        let at = c.position();
        let n = c.small_integer()?;
        if !(1..=64).contains(&n) {
            return Err(DiagramError::Label {
                position: at,
                message: format!("node count {n} outside 1..=64"),
            });
        }
        let n = n as usize;
        let mut d = CoxeterDiagram::new(n);
        let mut seen = std::collections::BTreeSet::new();
        while c.eat(";") {
            if c.at_end() {
                break;
            }
            c.skip_ws();
            let at = c.position();
            let i = c.small_integer()?;
            c.expect("-")?;
            let j = c.small_integer()?;
            c.expect(":")?;
            if i < 1 || j < 1 || i as usize > n || j as usize > n || i == j {
                return Err(DiagramError::Label {
                    position: at,
                    message: format!("bad edge {i}-{j} for {n} nodes"),
                });
            }
            let (i, j) = (i as usize - 1, j as usize - 1);
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(DiagramError::Label {
                    position: at,
                    message: format!("edge {}-{} given twice", i + 1, j + 1),
                });
            }
            c.skip_ws();
            let lat = c.position();
            let label = if c.eat("inf") {
                EdgeLabel::Infinity
            } else if c.eat("g=") {
                let v = c.multiquad()?;
                if !(&v + &MultiQuadElement::from_int(2)).signum().is_lt() {
                    return Err(DiagramError::Label {
                        position: lat,
                        message: format!("Gram value {v} is not below -2"),
                    });
                }
                EdgeLabel::GramValue(v)
            } else {
                EdgeLabel::Angle(check_angle(c.small_integer()?, lat)?)
            };
            d.set_edge(i, j, label);
        }
        d
    } else {
        return Err(c.error("expected `[` or `nodes=`").into());
    };
    if !c.at_end() {
        return Err(c.error("trailing input").into());
    }
    Ok(d)
}

fn check_angle(m: i64, position: usize) -> Result<u32, DiagramError> {
    match m {
        2..=6 => Ok(m as u32),
        _ if m < 2 => Err(DiagramError::Label { position, message: format!("label {m} is below 2") }),
        _ => Err(DiagramError::Label {
            position,
            message: format!("label {m} is unsupported; labels above 6 have non-quadratic cosines"),
        }),
    }
}

/// The compact hyperbolic 4-simplex `[5,3,3,5]`.
pub fn delta3() -> CoxeterDiagram {
    CoxeterDiagram::linear(&[5, 3, 3, 5])
}

/// The 4-simplex `[5,3,3,4]`.
pub fn delta2() -> CoxeterDiagram {
    CoxeterDiagram::linear(&[5, 3, 3, 4])
}
