//! Exact dense linear algebra over a [`Field`](crate::field::Field).
//!
//! Every subspace is stored in reduced row-echelon form, so two subspaces are equal
//! exactly when their stored bases are equal.

mod matrix;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use subspace::{SpanBuilder, Subspace};
