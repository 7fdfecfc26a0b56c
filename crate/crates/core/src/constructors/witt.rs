//! The Witt-Jacobson algebras W(n) of derivations of O(n).
//!
//! Basis: x^a d_i ordered by (direction, monomial); dim = n p^n. For
//! n = 1 the basis is relabeled e_{-1}..e_{p-2} with e_j = x^{j+1} d/dx.

use super::poly::{PolyAlgebra, VectorField};
use crate::algebra::{AlgebraDescription, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Basis bookkeeping for W(n) shared by the Cartan-type constructors.
pub(crate) struct WittBasis {
    pub ring: PolyAlgebra,
    pub n: usize,
    /// n * p^n
    pub dim: usize,
}

impl WittBasis {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        let ring = PolyAlgebra::new(field, n);
        let dim = n * ring.dim;
        WittBasis { ring, n, dim }
    }

    #[inline]
    pub fn index(&self, dir: usize, mono: usize) -> usize {
        dir * self.ring.dim + mono
    }

    #[inline]
    pub fn direction(&self, idx: usize) -> usize {
        idx / self.ring.dim
    }

    #[inline]
    pub fn monomial(&self, idx: usize) -> usize {
        idx % self.ring.dim
    }

    /// [x^a d_i, x^b d_j] = b_i x^{a+b-e_i} d_j - a_j x^{a+b-e_j} d_i,
    /// with truncation when any exponent sum reaches p.
    pub fn bracket_basis(&self, u: usize, v: usize) -> SparseVec {
        let f = self.ring.field;
        let (i, a) = (self.direction(u), self.monomial(u));
        let (j, b) = (self.direction(v), self.monomial(v));
        let mut out: SparseVec = Vec::with_capacity(2);
        let mut push = |dir: usize, mono: usize, coeff: u64| {
            if coeff == 0 {
                return;
            }
            let idx = self.index(dir, mono) as u32;
            match out.iter_mut().find(|(l, _)| *l == idx) {
                Some(e) => e.1 = f.add(e.1, coeff),
                None => out.push((idx, coeff)),
            }
        };
        // Index arithmetic is exact: monomial indices are linear in the
        // exponents, and sum_fits rules out truncated terms before any
        // digit of a + b could alias.
        let bi = self.ring.exponent(b, i);
        if bi > 0 && sum_fits(&self.ring, a, b, Some(i)) {
            let mono = a + b - self.ring_stride(i);
            push(j, mono, bi as u64);
        }
        let aj = self.ring.exponent(a, j);
        if aj > 0 && sum_fits(&self.ring, a, b, Some(j)) {
            let mono = a + b - self.ring_stride(j);
            push(i, mono, f.neg(aj as u64));
        }
        out.sort_unstable_by_key(|&(l, _)| l);
        out.retain(|&(_, c)| c != 0);
        out
    }

    fn ring_stride(&self, k: usize) -> usize {
        let p = self.ring.field.p() as usize;
        p.pow((self.n - 1 - k) as u32)
    }

    /// A W(n) coordinate vector as a derivation of O(n).
    pub fn to_vector_field(&self, coords: &[(u32, u64)]) -> VectorField {
        let mut vf = VectorField::zero(&self.ring);
        for &(idx, c) in coords {
            let dir = self.direction(idx as usize);
            let mono = self.monomial(idx as usize);
            let f = self.ring.field;
            vf.comps[dir][mono] = f.add(vf.comps[dir][mono], c);
        }
        vf
    }

    /// Coordinates of a derivation in the W(n) basis.
    pub fn from_vector_field(&self, vf: &VectorField) -> SparseVec {
        let mut out = Vec::new();
        for (dir, comp) in vf.comps.iter().enumerate() {
            for (mono, &c) in comp.iter().enumerate() {
                if c != 0 {
                    out.push((self.index(dir, mono) as u32, c));
                }
            }
        }
        out
    }

    /// The [p]-map of one basis derivation, by p-fold operator composition.
    pub fn p_power_basis(&self, idx: usize) -> SparseVec {
        let vf = self.to_vector_field(&[(idx as u32, 1)]);
        self.from_vector_field(&vf.p_power(&self.ring))
    }

    pub fn label(&self, idx: usize) -> String {
        if self.n == 1 {
            // e_j = x^{j+1} d/dx with j = mono - 1
            format!("e_{}", self.monomial(idx) as i64 - 1)
        } else {
            let exps = self.ring.exponents(self.monomial(idx));
            let exps: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
            format!("x({})d{}", exps.join(","), self.direction(idx) + 1)
        }
    }
}

fn sum_fits(ring: &PolyAlgebra, a: usize, b: usize, minus: Option<usize>) -> bool {
    let p = ring.field.p() as usize;
    for k in 0..ring.n {
        let mut s = ring.exponent(a, k) + ring.exponent(b, k);
        if minus == Some(k) {
            s -= 1;
        }
        if s >= p {
            return false;
        }
    }
    true
}

/// Builds W(n) over GF(p). `max_dim` is the construction resource guard.
pub fn construct_witt(n: usize, p: u64, max_dim: usize) -> Result<AlgebraDescription> {
    if n < 1 {
        return Err(Error::Divisibility("W(n) requires n >= 1".into()));
    }
    let field = FieldSpec::new(p)?;
    let basis = WittBasis::new(field, n);
    if basis.dim > max_dim {
        return Err(Error::ResourceGuard(format!(
            "W({n}) over GF({p}) has dimension {} > limit {max_dim}",
            basis.dim
        )));
    }
    witt_algebra(&basis)
}

/// W(n) without the guard, for internal ambient use by the subalgebra
/// constructors.
pub(crate) fn witt_algebra(basis: &WittBasis) -> Result<AlgebraDescription> {
    let d = basis.dim;
    let mut brackets = Vec::new();
    for u in 0..d {
        for v in (u + 1)..d {
            let coords = basis.bracket_basis(u, v);
            if !coords.is_empty() {
                brackets.push(((u, v), coords));
            }
        }
    }
    let mut pmap = Vec::new();
    for u in 0..d {
        let coords = basis.p_power_basis(u);
        if !coords.is_empty() {
            pmap.push((u, coords));
        }
    }
    let labels = (0..d).map(|u| basis.label(u)).collect();
    let name = format!("W({})", basis.n);
    AlgebraDescription::new(basis.ring.field, d, Some(labels), brackets, pmap)
        .map(|alg| alg.with_name(&name))
}
