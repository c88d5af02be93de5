//! Ergodic CRS parameters of `A_n = (Z/n)^ℕ` and `Â_n`, their random-subgroup
//! laws truncated to `(Z/N)^coords`, and the limit classifier.

pub mod howell;
pub mod law;
pub mod limit;
pub mod marginal;
pub mod param;
pub mod subgroup;

pub use law::{
    ann_of_multiple, exact_distribution, gl_generators, parse_rational, rational_to_string, sample,
    sample_annihilator_side, sample_kernel_side, Side, SubgroupDistribution,
};
pub use limit::{classify_limit, MaxOrderTrend, NTrend, SequenceDescriptor};
pub use marginal::{
    intersection_dim_distribution, marginal_csv, marginal_table, MarginalMode, MarginalRow,
};
pub use param::{char_subgroups, divides, enumerate_params, CharSubgroup, CrsParam};
pub use subgroup::{all_subgroups, TruncSubgroup};
