//! Commutator-subspace invariants of finite-dimensional associative algebras.
//!
//! Algebras are given by structure constants over an exact field (`F_p` or `Q`).
//! The library computes the commutator subspace `K(A)`, the codimensions of
//! `K_n(A) = K(A) + Rad^n(A)`, the Jacobson radical, primitive idempotents, Cartan
//! data, basic algebras with Morita-invariance certificates, and classifies algebras
//! Morita equivalent to `F[X]/(X^n)`.

pub mod algebra;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod field;
pub mod invariants;
pub mod io;
pub mod morita;
pub mod oracle;
pub mod poly;
pub mod quiver;
pub mod report;
pub mod structure;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};

pub type AlgebraFp = algebra::Algebra<PrimeField>;
pub type AlgebraQ = algebra::Algebra<Rationals>;
pub type SubspaceFp = exactla::Subspace<PrimeField>;
pub type SubspaceQ = exactla::Subspace<Rationals>;
pub type MatrixFp = exactla::Matrix<PrimeField>;
pub type MatrixQ = exactla::Matrix<Rationals>;
