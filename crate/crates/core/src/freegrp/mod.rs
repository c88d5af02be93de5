//! Free groups: reduced words, word maps into permutation groups, verbal
//! subgroups, and Schreier bases of finite-index subgroups.
//!
//! Only finite-index subgroups are handled.

pub mod perm;
pub mod schreier;
pub mod word;

pub use perm::{verbal_subgroup, word_map_eval, FinGroup, Perm, MAX_DEGREE};
pub use schreier::{
    index_p_subgroups, rewrite_in_basis, sample_index_p_subgroup, schreier_basis, schreier_graph,
    IndexPSubgroup, SchreierGraph, TreeEdge,
};
pub use word::{adyan_word, FreeWord};
