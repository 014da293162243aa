//! Exact computation of centralizers and zero-level centralizers of matrices.
//!
//! The crate works over GF(p) and Q with exact arithmetic throughout. It
//! builds nilpotent Jordan bases and Fitting decompositions, computes
//! `Cen(A)`, `Cen0(A) = {X : XA = AX = 0}` and `LCen(A)`, realises the
//! truncated polynomial matrix models of these algebras, and evaluates
//! noncommutative polynomial identities on them.
//!
//! ```
//! use zerocen::{centralizer, ExactMatrix, FieldSpec};
//!
//! let f = FieldSpec::prime(5)?;
//! // e1 -> e2 -> 0, e3 -> 0
//! let a = ExactMatrix::from_i64(f, 3, 3, &[0, 0, 0, 1, 0, 0, 0, 0, 0]);
//! let report = centralizer::check_dim_formula(&a, centralizer::DEFAULT_MAX_DIM)?;
//! assert_eq!((report.lhs, report.rhs), (4, 4));
//! # Ok::<(), zerocen::Error>(())
//! ```

pub mod algebra;
pub mod centralizer;
pub mod error;
pub mod field;
pub mod jordan;
pub mod matrix;
pub mod ncpoly;
pub mod pi;
pub mod poly;
pub mod random;
pub mod structured;
pub mod subspace;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use matrix::ExactMatrix;
pub use subspace::Subspace;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields-and-matrices.md")]
    mod fields_and_matrices {}
    #[doc = include_str!("../../../book/src/jordan-and-fitting.md")]
    mod jordan_and_fitting {}
    #[doc = include_str!("../../../book/src/centralizers.md")]
    mod centralizers {}
    #[doc = include_str!("../../../book/src/polynomial-models.md")]
    mod polynomial_models {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
