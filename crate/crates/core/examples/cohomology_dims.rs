//! Computes ordinary and restricted second-cohomology dimensions for a
//! few built-in algebras.

use std::time::Instant;

use modlie::cohomology::h2_basis;
use modlie::constructors::{construct_contact, construct_hamiltonian, construct_witt};
use modlie::restricted::h2star_basis;

fn main() {
    let algebras = [
        construct_witt(1, 5, 2000).unwrap(),
        construct_witt(2, 5, 2000).unwrap(),
        construct_hamiltonian(2, 5, 2000).unwrap(),
        construct_contact(3, 5, 2000).unwrap(),
    ];
    for alg in algebras {
        let start = Instant::now();
        let cohom = h2_basis(&alg, 300).unwrap();
        let rest = h2star_basis(&alg, 300, 0).unwrap();
        println!(
            "{:>6}  dim {:>4}  H1 {}  H2 {}  H2* {:>4}   ({:.2?})",
            alg.name().unwrap_or("?"),
            alg.dim(),
            cohom.h1_dim,
            cohom.h2_dim,
            rest.h2star_dim,
            start.elapsed()
        );
    }
}
