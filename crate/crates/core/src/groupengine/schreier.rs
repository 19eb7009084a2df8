//! Coset tables from finite images and Reidemeister–Schreier rewriting.

use std::collections::HashSet;

use super::element::{enumerate, ElementTable, GroupElement};
use super::presentation::{cyclic_reduce, invert, GroupPresentation, Word};
use super::GroupError;

/// Right action of the generators on the cosets of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// `forward[c][g]` is `c * gen_g`.
    forward: Vec<Vec<u32>>,
    /// `backward[c][g]` is `c * gen_g^-1`.
    backward: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Builds a table from forward images; panics unless each generator acts
    /// as a permutation.
    pub fn from_forward(forward: Vec<Vec<u32>>) -> Self {
        let n = forward.len();
        let gens = forward.first().map_or(0, Vec::len);
        let mut backward = vec![vec![u32::MAX; gens]; n];
        for (c, row) in forward.iter().enumerate() {
            assert_eq!(row.len(), gens);
            for (g, &d) in row.iter().enumerate() {
                assert_eq!(backward[d as usize][g], u32::MAX, "generator {g} is not a permutation");
                backward[d as usize][g] = c as u32;
            }
        }
        Self { forward, backward }
    }

    pub fn index(&self) -> usize {
        self.forward.len()
    }

    pub fn generator_count(&self) -> usize {
        self.forward.first().map_or(0, Vec::len)
    }

    pub fn act(&self, c: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.forward[c][g] as usize
        } else {
            self.backward[c][g] as usize
        }
    }

    pub fn trace(&self, c: usize, word: &[i32]) -> usize {
        word.iter().fold(c, |x, &l| self.act(x, l))
    }
}

/// Coset table of the kernel of the homomorphism sending generator `g` to
/// `images[g]`: cosets are the image elements, acted on by right
/// multiplication. Also returns the element table of the image.
pub fn schreier_coset_table<T: GroupElement>(
    pres: &GroupPresentation,
    images: &[T],
    identity: T,
    cap: usize,
) -> Result<(CosetTable, ElementTable<T>), GroupError> {
    assert_eq!(images.len(), pres.generator_count, "one image per generator");
    let table = enumerate(images, identity, cap)?;
    let forward = (0..table.order())
        .map(|c| (0..images.len()).map(|g| table.act(c, g as i32 + 1) as u32).collect())
        .collect();
    Ok((CosetTable::from_forward(forward), table))
}

/// A subgroup presentation together with the expression of each new
/// generator as a word in the old ones.
#[derive(Clone, Debug)]
pub struct RsResult {
    pub presentation: GroupPresentation,
    pub generator_words: Vec<Word>,
}

pub const DEFAULT_RELATOR_BUDGET: usize = 200_000;

/// Reidemeister–Schreier with a breadth-first Schreier transversal. Letters
/// are tried in the order `1, -1, 2, -2, ...`.
pub fn reidemeister_schreier(
    pres: &GroupPresentation,
    table: &CosetTable,
    relator_budget: usize,
) -> Result<RsResult, GroupError> {
    let index = table.index();
    let needed = index * pres.relators.len();
    if needed > relator_budget {
        return Err(GroupError::RelatorBudget { needed, budget: relator_budget });
    }
    let n = pres.generator_count;
    assert_eq!(table.generator_count(), n);
    let letters: Vec<i32> = (1..=n as i32).flat_map(|g| [g, -g]).collect();

    // transversal words and tree edges (coset, positive generator)
    let mut rep: Vec<Option<Word>> = vec![None; index];
    rep[0] = Some(Vec::new());
    let mut tree: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let c = queue[k];
        for &l in &letters {
            let d = table.act(c, l);
            if rep[d].is_none() {
                let mut w = rep[c].clone().unwrap();
                w.push(l);
                rep[d] = Some(w);
                queue.push(d);
                if l > 0 {
                    tree.insert((c, l as usize - 1));
                } else {
                    tree.insert((d, (-l) as usize - 1));
                }
            }
        }
        k += 1;
    }
    let rep: Vec<Word> = rep
        .into_iter()
        .map(|w| w.expect("coset table is not transitive"))
        .collect();

    // number the nontrivial Schreier generators s_{c,g} = rep(c) g rep(cg)^-1
    let mut sgen = vec![vec![0i32; n]; index];
    let mut generator_words = Vec::new();
    for c in 0..index {
        for g in 0..n {
            if tree.contains(&(c, g)) {
                continue;
            }
            generator_words.push({
                let mut w = rep[c].clone();
                w.push(g as i32 + 1);
                w.extend(invert(&rep[table.act(c, g as i32 + 1)]));
                super::presentation::free_reduce(&w)
            });
            sgen[c][g] = generator_words.len() as i32;
        }
    }

    let mut seen = HashSet::new();
    let mut relators = Vec::new();
    for r in &pres.relators {
        for c in 0..index {
            let mut x = c;
            let mut w = Vec::with_capacity(r.len());
            for &l in r {
                if l > 0 {
                    let s = sgen[x][l as usize - 1];
                    if s != 0 {
                        w.push(s);
                    }
                    x = table.act(x, l);
                } else {
                    let y = table.act(x, l);
                    let s = sgen[y][(-l) as usize - 1];
                    if s != 0 {
                        w.push(-s);
                    }
                    x = y;
                }
            }
            debug_assert_eq!(x, c, "relator does not act trivially on cosets");
            let w = cyclic_reduce(&w);
            if !w.is_empty() && seen.insert(w.clone()) {
                relators.push(w);
            }
        }
    }
    Ok(RsResult {
        presentation: GroupPresentation::new(generator_words.len(), relators),
        generator_words,
    })
}
