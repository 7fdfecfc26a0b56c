//! Exact linear algebra over prime fields GF(p).

mod field;
mod sparse;

pub use field::FieldSpec;
pub use sparse::{reduce_mod_image, RowReducer, SparseMatrix};
