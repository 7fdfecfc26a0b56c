//! The Special, Hamiltonian, and Contact algebras, realized inside W(n)
//! by kernel/image constructions followed by derived subalgebras.
//!
//! The ambient bracket and the p-fold operator composition pin every
//! convention; the construction fails loudly if a span is not closed,
//! a p-th power leaves the span, or a dimension misses its closed form.

use super::poly::{PolyAlgebra, VectorField};
use super::witt::{witt_algebra, WittBasis};
use crate::algebra::{AlgebraDescription, ElementVector, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, RowReducer, SparseMatrix};

/// An echelonized subalgebra of an ambient W(n), with enough data to
/// convert between ambient and subalgebra coordinates.
struct Subalgebra<'a> {
    ambient: &'a AlgebraDescription,
    basis: Vec<ElementVector>,
    /// pivot column of each basis row
    pivots: Vec<usize>,
}

impl<'a> Subalgebra<'a> {
    fn new(ambient: &'a AlgebraDescription, basis: Vec<ElementVector>) -> Self {
        let pivots = basis
            .iter()
            .map(|v| {
                v.coords
                    .iter()
                    .position(|&c| c != 0)
                    .expect("echelon rows are nonzero")
            })
            .collect();
        Subalgebra {
            ambient,
            basis,
            pivots,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an ambient vector in the echelonized basis; errors
    /// if the vector leaves the span.
    fn coords(&self, v: &[u64]) -> Result<SparseVec> {
        let f = self.ambient.field();
        let mut residual = v.to_vec();
        let mut out: SparseVec = Vec::new();
        for (r, (row, &pivot)) in self.basis.iter().zip(&self.pivots).enumerate() {
            let c = residual[pivot];
            if c == 0 {
                continue;
            }
            out.push((r as u32, c));
            for (slot, &rv) in residual.iter_mut().zip(&row.coords) {
                if rv != 0 {
                    *slot = f.sub(*slot, f.mul(c, rv));
                }
            }
        }
        if residual.iter().any(|&c| c != 0) {
            return Err(Error::NotInSpan);
        }
        Ok(out)
    }

    /// Materializes the subalgebra as a standalone AlgebraDescription,
    /// with the [p]-map computed by operator composition in the ambient
    /// derivation realization.
    fn materialize(&self, witt: &WittBasis, context: &str) -> Result<AlgebraDescription> {
        let d = self.dim();
        let mut brackets = Vec::new();
        let mut acc = vec![0u64; self.ambient.dim()];
        for i in 0..d {
            for j in (i + 1)..d {
                acc.iter_mut().for_each(|c| *c = 0);
                self.ambient.bracket_eval_into(
                    &self.basis[i].coords,
                    &self.basis[j].coords,
                    &mut acc,
                );
                let coords = self.coords(&acc).map_err(|_| Error::NotClosed { i, j })?;
                if !coords.is_empty() {
                    brackets.push(((i, j), coords));
                }
            }
        }
        let mut pmap = Vec::new();
        for i in 0..d {
            let vf = witt.to_vector_field(&self.basis[i].to_sparse());
            let powered = vf.p_power(&witt.ring);
            let ambient_coords = witt.from_vector_field(&powered);
            let mut dense = vec![0u64; self.ambient.dim()];
            for &(l, c) in &ambient_coords {
                dense[l as usize] = c;
            }
            let coords = self.coords(&dense).map_err(|_| {
                Error::ExtensionAxiom(format!(
                    "{context}: p-th power of basis vector {i} leaves the subalgebra"
                ))
            })?;
            if !coords.is_empty() {
                pmap.push((i, coords));
            }
        }
        AlgebraDescription::new(self.ambient.field(), d, None, brackets, pmap)
    }
}

/// Echelonizes a set of ambient vectors.
fn echelonize(
    field: FieldSpec,
    dim: usize,
    vectors: impl Iterator<Item = SparseVec>,
) -> Vec<ElementVector> {
    let mut red = RowReducer::new(field, dim);
    for v in vectors {
        red.push_row(&v);
    }
    red.dense_rows()
        .into_iter()
        .map(ElementVector::from_coords)
        .collect()
}

/// Iterates derived subalgebras until the dimension stabilizes.
fn stable_derived(
    ambient: &AlgebraDescription,
    mut span: Vec<ElementVector>,
) -> Result<Vec<ElementVector>> {
    loop {
        let next = ambient.derived_subalgebra(&span)?;
        if next.len() == span.len() {
            return Ok(next);
        }
        span = next;
    }
}

/// S(n): divergence-free derivations of O(n), then the derived subalgebra.
/// dim = (n-1)(p^n - 1).
pub fn construct_special(n: usize, p: u64, max_dim: usize) -> Result<AlgebraDescription> {
    if n < 3 {
        return Err(Error::Divisibility("S(n) requires n >= 3".into()));
    }
    let field = FieldSpec::new(p)?;
    let pn = (p as usize).pow(n as u32);
    let expected = (n - 1) * (pn - 1);
    if expected > max_dim {
        return Err(Error::ResourceGuard(format!(
            "S({n}) over GF({p}) has dimension {expected} > limit {max_dim}"
        )));
    }
    let witt = WittBasis::new(field, n);
    let ambient = witt_algebra(&witt)?;
    // div(x^a d_i) = d_i(x^a): one matrix entry per basis derivation.
    let mut triples = Vec::new();
    for u in 0..witt.dim {
        let i = witt.direction(u);
        let a = witt.monomial(u);
        let e = witt.ring.exponent(a, i);
        if e > 0 {
            let target = witt.ring.index(
                &(0..n)
                    .map(|k| witt.ring.exponent(a, k) - usize::from(k == i))
                    .collect::<Vec<_>>(),
            );
            triples.push((target as u32, u as u32, e as u64));
        }
    }
    let div = SparseMatrix::new(field, pn, witt.dim, triples)?;
    let kernel = div.kernel_basis();
    let kernel: Vec<ElementVector> = kernel.into_iter().map(ElementVector::from_coords).collect();
    let derived = ambient.derived_subalgebra(&kernel)?;
    let sub = Subalgebra::new(&ambient, derived);
    if sub.dim() != expected {
        return Err(Error::DimensionFormula {
            context: format!("S({n}) over GF({p})"),
            got: sub.dim(),
            expected,
        });
    }
    sub.materialize(&witt, &format!("S({n})"))
        .map(|alg| alg.with_name(&format!("S({n})")))
}

/// H(n), n even: the span of the Hamiltonian fields D_H(f), iterated
/// derived subalgebra until stable. dim = p^n - 2.
pub fn construct_hamiltonian(n: usize, p: u64, max_dim: usize) -> Result<AlgebraDescription> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Divisibility("H(n) requires even n >= 2".into()));
    }
    let field = FieldSpec::new(p)?;
    let pn = (p as usize).pow(n as u32);
    let expected = pn - 2;
    if expected > max_dim {
        return Err(Error::ResourceGuard(format!(
            "H({n}) over GF({p}) has dimension {expected} > limit {max_dim}"
        )));
    }
    let witt = WittBasis::new(field, n);
    let ambient = witt_algebra(&witt)?;
    let r = n / 2;
    let ring = &witt.ring;
    let fields = (0..pn).map(|mono| {
        let f = ring.monomial(mono, 1);
        let vf = hamiltonian_field(ring, r, &f);
        witt.from_vector_field(&vf)
    });
    let span = echelonize(field, witt.dim, fields);
    let derived = stable_derived(&ambient, span)?;
    let sub = Subalgebra::new(&ambient, derived);
    if sub.dim() != expected {
        return Err(Error::DimensionFormula {
            context: format!("H({n}) over GF({p})"),
            got: sub.dim(),
            expected,
        });
    }
    sub.materialize(&witt, &format!("H({n})"))
        .map(|alg| alg.with_name(&format!("H({n})")))
}

/// D_H(f) = sum_{i<=r} (d_i(f) d_{i+r} - d_{i+r}(f) d_i).
fn hamiltonian_field(ring: &PolyAlgebra, r: usize, f: &[u64]) -> VectorField {
    let fld = ring.field;
    let mut vf = VectorField::zero(ring);
    for i in 0..r {
        let di = ring.derivative(f, i);
        let dir = ring.derivative(f, i + r);
        for (slot, c) in vf.comps[i + r].iter_mut().zip(di) {
            *slot = fld.add(*slot, c);
        }
        for (slot, c) in vf.comps[i].iter_mut().zip(dir) {
            *slot = fld.sub(*slot, c);
        }
    }
    vf
}

/// K(n), n odd: the span of the contact fields D_K(f), iterated derived
/// subalgebra until stable. dim = p^n when n + 3 is nonzero mod p,
/// p^n - 1 otherwise.
pub fn construct_contact(n: usize, p: u64, max_dim: usize) -> Result<AlgebraDescription> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Divisibility("K(n) requires odd n >= 3".into()));
    }
    let field = FieldSpec::new(p)?;
    let pn = (p as usize).pow(n as u32);
    let expected = if (n as u64 + 3).is_multiple_of(p) {
        pn - 1
    } else {
        pn
    };
    if expected > max_dim {
        return Err(Error::ResourceGuard(format!(
            "K({n}) over GF({p}) has dimension {expected} > limit {max_dim}"
        )));
    }
    let witt = WittBasis::new(field, n);
    let ambient = witt_algebra(&witt)?;
    let r = (n - 1) / 2;
    let ring = &witt.ring;
    let fields = (0..pn).map(|mono| {
        let f = ring.monomial(mono, 1);
        let vf = contact_field(ring, r, &f);
        witt.from_vector_field(&vf)
    });
    let span = echelonize(field, witt.dim, fields);
    let derived = stable_derived(&ambient, span)?;
    let sub = Subalgebra::new(&ambient, derived);
    if sub.dim() != expected {
        return Err(Error::DimensionFormula {
            context: format!("K({n}) over GF({p})"),
            got: sub.dim(),
            expected,
        });
    }
    sub.materialize(&witt, &format!("K({n})"))
        .map(|alg| alg.with_name(&format!("K({n})")))
}

/// D_K(f) = sum_{i<=2r} (x_i d_n(f) + sigma(i') d_{i'}(f)) d_i + Delta(f) d_n
/// with i' = i +- r, sigma(i) = 1 for i <= r and -1 otherwise, and
/// Delta(f) = 2f - sum_{i<=2r} x_i d_i(f).
fn contact_field(ring: &PolyAlgebra, r: usize, f: &[u64]) -> VectorField {
    let fld = ring.field;
    let n = ring.n;
    let last = n - 1; // index of x_n
    let mut vf = VectorField::zero(ring);
    let dn = ring.derivative(f, last);
    for i in 0..2 * r {
        let ip = if i < r { i + r } else { i - r };
        let sigma_ip = if ip < r { 1u64 } else { fld.p() - 1 };
        let xi = ring.generator(i);
        let term1 = ring.mul(&xi, &dn);
        let dip = ring.derivative(f, ip);
        for ((slot, c1), c2) in vf.comps[i].iter_mut().zip(term1).zip(dip) {
            *slot = fld.add(*slot, fld.add(c1, fld.mul(sigma_ip, c2)));
        }
    }
    // Delta(f)
    let mut delta: Vec<u64> = f.iter().map(|&c| fld.mul(2, c)).collect();
    for i in 0..2 * r {
        let xi = ring.generator(i);
        let di = ring.derivative(f, i);
        let prod = ring.mul(&xi, &di);
        for (slot, c) in delta.iter_mut().zip(prod) {
            *slot = fld.sub(*slot, c);
        }
    }
    vf.comps[last] = delta;
    vf
}
