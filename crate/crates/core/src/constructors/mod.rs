//! Constructors for the restricted simple Lie algebras in scope:
//! W(n), S(n), H(n even), K(n odd), sl(l+1) with p not dividing l+1,
//! and psl(l+1) with p dividing l+1.

mod cartan;
mod classical;
mod poly;
mod witt;

pub use cartan::{construct_contact, construct_hamiltonian, construct_special};
pub use classical::{construct_psl, construct_sl};
pub use witt::construct_witt;

/// Default construction resource guard (dimension bound).
pub const DEFAULT_CONSTRUCT_LIMIT: usize = 2000;

use crate::algebra::AlgebraDescription;
use crate::error::Result;

/// The algebra families this crate can generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Witt,
    Special,
    Hamiltonian,
    Contact,
    Sl,
    Psl,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Witt => "witt",
            Family::Special => "special",
            Family::Hamiltonian => "hamiltonian",
            Family::Contact => "contact",
            Family::Sl => "sl",
            Family::Psl => "psl",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "witt" | "w" => Some(Family::Witt),
            "special" | "s" => Some(Family::Special),
            "hamiltonian" | "h" => Some(Family::Hamiltonian),
            "contact" | "k" => Some(Family::Contact),
            "sl" => Some(Family::Sl),
            "psl" => Some(Family::Psl),
            _ => None,
        }
    }
}

/// Dispatches to the family constructor. For sl/psl the parameter `n` is
/// the matrix size.
pub fn construct(family: Family, n: usize, p: u64, max_dim: usize) -> Result<AlgebraDescription> {
    match family {
        Family::Witt => construct_witt(n, p, max_dim),
        Family::Special => construct_special(n, p, max_dim),
        Family::Hamiltonian => construct_hamiltonian(n, p, max_dim),
        Family::Contact => construct_contact(n, p, max_dim),
        Family::Sl => construct_sl(n, p, max_dim),
        Family::Psl => construct_psl(n, p, max_dim),
    }
}
