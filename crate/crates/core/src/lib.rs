//! Exact computations around characteristic random subgroups: finite-field
//! rank statistics, finite abelian group calculus, truncated random-subgroup
//! laws on `(Z/N)^k`, torsion measures on the 2-torus and free-group
//! Schreier machinery.

pub mod crs;
pub mod error;
pub mod finab;
pub mod freegrp;
pub mod qlinalg;
pub mod rng;
pub mod torus2;

pub use error::{Error, Result};
