//! Finite groups of matrices and permutations, coset tables, subgroup
//! presentations and abelianisation.

mod element;
mod presentation;
mod schreier;
mod snf;
mod tietze;

pub use element::{enumerate, ElementTable, GroupElement, Permutation, DEFAULT_CAP};
pub use presentation::{cyclic_reduce, free_reduce, invert, GroupPresentation, Word};
pub use schreier::{
    reidemeister_schreier, schreier_coset_table, CosetTable, RsResult, DEFAULT_RELATOR_BUDGET,
};
pub use snf::{abelianization, smith_normal_form, SnfResult};
pub use tietze::{tietze_simplify, tietze_simplify_tracked, TietzeResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("rewriting needs {needed} relators, above the budget of {budget}")]
    RelatorBudget { needed: usize, budget: usize },
}
