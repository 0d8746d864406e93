//! Exact scalars and dense linear algebra over `Q` and `F_p`.

mod field;
mod matrix;

pub use field::{ExactField, Scalar};
pub use matrix::{Matrix, Rref, Solution, Subquotient};
