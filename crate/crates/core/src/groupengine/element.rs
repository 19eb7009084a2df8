use std::collections::HashMap;
use std::hash::Hash;

use super::presentation::Word;
use super::GroupError;
use crate::fqmatrix::FqMatrix;

/// A group element with an associative product.
pub trait GroupElement: Clone + Eq + Hash {
    fn op(&self, other: &Self) -> Self;
}

impl GroupElement for FqMatrix {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// A permutation of `0..n`; the product `p.op(q)` applies `p` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    pub fn image(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Self(out)
    }
}

impl GroupElement for Permutation {
    fn op(&self, other: &Self) -> Self {
        Self(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }
}

pub const DEFAULT_CAP: usize = 1_000_000;

/// The elements of a finite group in breadth-first discovery order, with
/// right multiplication tables for the generators.
#[derive(Clone, Debug)]
pub struct ElementTable<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    /// `mult[g][x]` is the index of `elements[x] * gen_g`.
    mult: Vec<Vec<u32>>,
    /// `inv_mult[g][x]` is the index of `elements[x] * gen_g^-1`.
    inv_mult: Vec<Vec<u32>>,
}

/// Breadth-first closure of `generators` from `identity`. Index 0 is the
/// identity; the order is deterministic.
pub fn enumerate<T: GroupElement>(
    generators: &[T],
    identity: T,
    cap: usize,
) -> Result<ElementTable<T>, GroupError> {
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);
    let mut mult: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
    let mut k = 0;
    while k < elements.len() {
        for (g, gen) in generators.iter().enumerate() {
            let y = elements[k].op(gen);
            let next = elements.len();
            let idx = *index.entry(y.clone()).or_insert(next);
            if idx == next {
                if next >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                elements.push(y);
            }
            mult[g].push(idx as u32);
        }
        k += 1;
    }
    let inv_mult = mult
        .iter()
        .map(|col| {
            let mut inv = vec![0u32; col.len()];
            for (x, &y) in col.iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            inv
        })
        .collect();
    Ok(ElementTable { elements, index, mult, inv_mult })
}

impl<T: GroupElement> ElementTable<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_count(&self) -> usize {
        self.mult.len()
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Index of `elements[x] * g^sign` for a signed 1-based letter.
    pub fn act(&self, x: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.mult[g][x] as usize
        } else {
            self.inv_mult[g][x] as usize
        }
    }

    /// Index of the product of a word in the generators.
    pub fn evaluate(&self, word: &[i32]) -> usize {
        word.iter().fold(0, |x, &l| self.act(x, l))
    }

    /// Order of the subgroup generated by the listed generators (0-based).
    pub fn subgroup_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for &g in gens {
                let y = self.mult[g][x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            k += 1;
        }
        queue.len()
    }

    /// A shortest word for every element, following the BFS tree.
    pub fn words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.order()];
        words[0] = Some(Vec::new());
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for g in 0..self.generator_count() {
                let y = self.mult[g][x] as usize;
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(g as i32 + 1);
                    words[y] = Some(w);
                    queue.push(y);
                }
            }
            k += 1;
        }
        words.into_iter().map(Option::unwrap).collect()
    }
}
