//! Exact integer linear algebra: sparse matrices, Smith normal form and
//! homology of free complexes.

mod elimination;
mod homology;
mod matrix;
mod smith;

pub use elimination::{elementary_divisors, ElementaryDivisors, DENSE_CUTOFF};
pub use homology::{homology_at, HomologySummary};
pub use matrix::IntegerMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
