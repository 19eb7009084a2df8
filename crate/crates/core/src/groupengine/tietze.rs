//! Tietze simplification of presentations.

use std::collections::HashSet;

use super::presentation::{cyclic_reduce, invert, GroupPresentation, Word};

/// A simplified presentation; generator `i` of the result is generator
/// `kept[i]` (0-based) of the input.
#[derive(Clone, Debug)]
pub struct TietzeResult {
    pub presentation: GroupPresentation,
    pub kept: Vec<usize>,
}

/// Relators longer than this are not used to shorten others.
const SUBSTITUTION_MAX_LEN: usize = 16;

/// Elimination stops when it would push the total relator length past
/// this multiple of the starting length.
const GROWTH_FACTOR: usize = 4;

struct State {
    alive: Vec<bool>,
    relators: Vec<Word>,
}

impl State {
    fn normalize(&mut self) {
        let mut seen = HashSet::new();
        let rels = std::mem::take(&mut self.relators);
        for r in rels {
            let r = cyclic_reduce(&r);
            if r.is_empty() {
                continue;
            }
            let key = canonical(&r);
            if seen.insert(key) {
                self.relators.push(r);
            }
        }
    }

    fn count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    fn snapshot(&self) -> TietzeResult {
        let kept: Vec<usize> = (0..self.alive.len()).filter(|&g| self.alive[g]).collect();
        let mut new_index = vec![0i32; self.alive.len()];
        for (k, &g) in kept.iter().enumerate() {
            new_index[g] = k as i32 + 1;
        }
        let relators = self
            .relators
            .iter()
            .map(|r| r.iter().map(|&l| new_index[l.unsigned_abs() as usize - 1] * l.signum()).collect())
            .collect();
        TietzeResult { presentation: GroupPresentation::new(kept.len(), relators), kept }
    }

    /// Best generator to eliminate: one occurring exactly once in some
    /// relator, minimising the change in total length.
    fn elimination_candidate(&self) -> Option<(usize, usize, i64)> {
        let n = self.alive.len();
        let mut occurrences = vec![0usize; n];
        for r in &self.relators {
            for &l in r {
                occurrences[l.unsigned_abs() as usize - 1] += 1;
            }
        }
        let mut best: Option<(i64, usize, usize, usize)> = None;
        for (ri, r) in self.relators.iter().enumerate() {
            let mut local = std::collections::HashMap::new();
            for &l in r {
                *local.entry(l.unsigned_abs() as usize - 1).or_insert(0usize) += 1;
            }
            for (&g, &c) in &local {
                if c != 1 {
                    continue;
                }
                let len = r.len() as i64;
                let others = (occurrences[g] - 1) as i64;
                let change = others * (len - 2) - len;
                let key = (change, r.len(), g, ri);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(change, _, g, ri)| (g, ri, change))
    }

    fn eliminate(&mut self, g: usize, ri: usize) {
        let r = self.relators.remove(ri);
        let pos = r.iter().position(|&l| l.unsigned_abs() as usize - 1 == g).unwrap();
        // rotate so the letter leads: r ~ g^e U, so g = U^-1 (e = 1) or U (e = -1)
        let rotated: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
        let rest = &rotated[1..];
        let expr: Word = if rotated[0] > 0 { invert(rest) } else { rest.to_vec() };
        let expr_inv = invert(&expr);
        let gl = g as i32 + 1;
        for rel in &mut self.relators {
            if !rel.iter().any(|&l| l.abs() == gl) {
                continue;
            }
            let mut out = Vec::with_capacity(rel.len());
            for &l in rel.iter() {
                if l == gl {
                    out.extend_from_slice(&expr);
                } else if l == -gl {
                    out.extend_from_slice(&expr_inv);
                } else {
                    out.push(l);
                }
            }
            *rel = out;
        }
        self.alive[g] = false;
        self.normalize();
    }

    /// Replaces a long cyclic subword of one relator, occurring in another,
    /// by the shorter rest. Returns whether anything changed.
    fn substitute_once(&mut self) -> bool {
        let mut order: Vec<usize> = (0..self.relators.len()).collect();
        order.sort_by_key(|&i| self.relators[i].len());
        for &ri in &order {
            let r = self.relators[ri].clone();
            let len = r.len();
            if len > SUBSTITUTION_MAX_LEN {
                break;
            }
            let patterns = subword_patterns(&r);
            for si in 0..self.relators.len() {
                if si == ri || self.relators[si].len() < len / 2 + 1 {
                    continue;
                }
                if let Some(new) = shorten(&self.relators[si], &patterns) {
                    self.relators[si] = new;
                    self.normalize();
                    return true;
                }
            }
        }
        false
    }
}

/// Cyclic subwords of `r` and `r^-1` longer than half of `r`, each paired
/// with the inverse of the complementary part.
fn subword_patterns(r: &[i32]) -> Vec<(Word, Word)> {
    let len = r.len();
    let mut out = Vec::new();
    for w in [r.to_vec(), invert(r)] {
        for start in 0..len {
            let rot: Word = w[start..].iter().chain(&w[..start]).copied().collect();
            for k in (len / 2 + 1)..=len {
                out.push((rot[..k].to_vec(), invert(&rot[k..])));
            }
        }
    }
    out.sort_by_key(|p| std::cmp::Reverse(p.0.len()));
    out
}

/// Applies the first pattern occurring cyclically in `s`.
fn shorten(s: &[i32], patterns: &[(Word, Word)]) -> Option<Word> {
    let n = s.len();
    for (pat, rep) in patterns {
        let k = pat.len();
        if k > n {
            continue;
        }
        for start in 0..n {
            if (0..k).all(|t| s[(start + t) % n] == pat[t]) {
                let mut out = rep.clone();
                out.extend((k..n).map(|t| s[(start + t) % n]));
                return Some(cyclic_reduce(&out));
            }
        }
    }
    None
}

/// Minimal rotation of the word or its inverse, for duplicate detection.
fn canonical(r: &[i32]) -> Word {
    let mut best: Option<Word> = None;
    for w in [r.to_vec(), invert(r)] {
        for s in 0..w.len() {
            let rot: Word = w[s..].iter().chain(&w[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn tietze_simplify(pres: &GroupPresentation, target_generators: usize) -> GroupPresentation {
    tietze_simplify_tracked(pres, target_generators, None).presentation
}

/// Eliminates generators until `target_generators` remain or no move
/// applies. `on_move` sees the presentation after every move.
pub fn tietze_simplify_tracked(
    pres: &GroupPresentation,
    target_generators: usize,
    mut on_move: Option<&mut dyn FnMut(&GroupPresentation)>,
) -> TietzeResult {
    let mut st = State { alive: vec![true; pres.generator_count], relators: pres.relators.clone() };
    st.normalize();
    let limit = GROWTH_FACTOR * st.total_length().max(64);
    loop {
        if let Some(hook) = on_move.as_deref_mut() {
            hook(&st.snapshot().presentation);
        }
        if st.count() <= target_generators {
            break;
        }
        if let Some((g, ri, change)) = st.elimination_candidate() {
            if (st.total_length() as i64 + change) as usize <= limit {
                st.eliminate(g, ri);
                continue;
            }
        }
        if !st.substitute_once() {
            break;
        }
    }
    st.snapshot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupengine::snf::abelianization;

    #[test]
    fn eliminates_inverse_pair() {
        let p = GroupPresentation::new(2, vec![vec![1, 2]]);
        let r = tietze_simplify_tracked(&p, 0, None);
        assert_eq!(r.presentation.generator_count, 1);
        assert!(r.presentation.relators.is_empty());
    }

    #[test]
    fn free_reduction_on_input() {
        let p = GroupPresentation::new(2, vec![vec![1, -1, 2]]);
        assert_eq!(p.relators, vec![vec![2]]);
    }

    #[test]
    fn substitution_shortens() {
        // a^5 = 1 rewrites a^4 b into a^-1 b
        let s = shorten(&[1, 1, 1, 1, 2], &subword_patterns(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(s, vec![-1, 2]);
    }

    #[test]
    fn abelianization_is_preserved_by_each_move() {
        let invariants = |p: &GroupPresentation| {
            let a = abelianization(p);
            (a.free_rank, a.torsion())
        };
        // <a, b, c, d | a b c^2, b^3 d^-1 a, c d c d^-1, a^4 b^-2>
        let pres = GroupPresentation::new(
            4,
            vec![vec![1, 2, 3, 3], vec![2, 2, 2, -4, 1], vec![3, 4, 3, -4], vec![1, 1, 1, 1, -2, -2]],
        );
        let before = invariants(&pres);
        let mut moves = 0;
        let mut hook = |p: &GroupPresentation| {
            moves += 1;
            assert_eq!(invariants(p), before);
        };
        let r = tietze_simplify_tracked(&pres, 0, Some(&mut hook));
        assert!(moves > 2);
        assert!(r.presentation.generator_count < pres.generator_count);
    }
}
