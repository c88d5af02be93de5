//! Linear algebra over finite fields and the q-combinatorics of random
//! matrix ranks.

pub mod counting;
pub mod field;
pub mod matrix;

pub use counting::{gaussian_binomial, rank_count, s_seq, t_seq, v_small, vtilde};
pub use field::FieldSpec;
pub use matrix::{
    enumerate_matrices, enumerate_subspaces, matrix_rank, sample_invertible, sample_uniform_matrix,
    FqMatrix, Subspace,
};
