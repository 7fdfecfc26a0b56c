//! Finite dimensional restricted Lie algebras over prime fields:
//! constructors for the simple Cartan-type and classical families,
//! ordinary and restricted second cohomology, and one-dimensional
//! central extensions, all in exact GF(p) arithmetic.

pub mod algebra;
pub mod cohomology;
pub mod constructors;
pub mod error;
pub mod extensions;
pub mod io;
pub mod linalg;
pub mod report;
pub mod restricted;

pub use algebra::{AlgebraDescription, ElementVector};
pub use error::{Error, Result};
pub use linalg::{reduce_mod_image, FieldSpec, RowReducer, SparseMatrix};
