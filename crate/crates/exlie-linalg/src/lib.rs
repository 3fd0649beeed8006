//! Exact dense linear algebra over any [`exlie_field::Field`].
//!
//! Vectors are plain `Vec<F::Elem>` and every routine takes the field by
//! reference. Elimination always pivots on the first nonzero entry, so all
//! results are deterministic; subspaces are stored in reduced row-echelon
//! form, which makes equality a structural comparison.

mod mat;
mod solve;
pub mod sparse;
mod subspace;
pub mod vector;

pub use mat::Mat;
pub use solve::{kernel, rank, rref, solve, Rref};
pub use sparse::SparseVec;
pub use subspace::{DirectSum, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("decomposition pieces do not span the ambient space (total dim {got}, need {want})")]
    NotSpanning { got: usize, want: usize },
    #[error("decomposition pieces overlap")]
    Overlapping,
    #[error("solution failed the substitution check")]
    CheckFailed,
}
