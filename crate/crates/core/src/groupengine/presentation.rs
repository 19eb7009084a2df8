//! Finitely presented groups. Words are sequences of nonzero integers: `g`
//! stands for generator `g` (1-based) and `-g` for its inverse.

use std::fmt;

pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse pairs across the ends.
pub fn cyclic_reduce(word: &[i32]) -> Word {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn invert(word: &[i32]) -> Word {
    word.iter().rev().map(|&x| -x).collect()
}

impl GroupPresentation {
    /// Freely reduces every relator and drops the trivial ones. Panics when a
    /// letter is out of range.
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| {
                assert!(
                    r.iter().all(|&x| x != 0 && x.unsigned_abs() as usize <= generator_count),
                    "letter out of range in {r:?}"
                );
                free_reduce(&r)
            })
            .filter(|r| !r.is_empty())
            .collect();
        Self { generator_count, relators }
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} generators | ", self.generator_count)?;
        for (k, r) in self.relators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            for (i, x) in r.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, -1, 2]), vec![2]);
        assert_eq!(free_reduce(&[1, 2, -2, -1]), Vec::<i32>::new());
        assert_eq!(cyclic_reduce(&[-3, 1, 2, 3]), vec![1, 2]);
        assert_eq!(invert(&[1, -2, 3]), vec![-3, 2, -1]);
    }

    #[test]
    fn constructor_drops_trivial_relators() {
        let p = GroupPresentation::new(2, vec![vec![1, -1], vec![1, 1]]);
        assert_eq!(p.relators, vec![vec![1, 1]]);
    }
}
