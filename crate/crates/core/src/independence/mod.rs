//! Numeric refinement matrices `C` and `D`, rank tests and a sampling oracle.

mod matrix;
mod oracle;

pub(crate) use self::matrix::numeric_rank;
pub use self::matrix::{build_refinement_matrix, is_full_rank, Flavor, RefinementMatrix, RANK_TOL, ZERO_TOL};
pub use self::oracle::{gram_rank_oracle, rows_independent, sample_matrix};
