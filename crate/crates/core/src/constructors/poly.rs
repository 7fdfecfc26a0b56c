//! The truncated polynomial algebra O(n) = F[x_1..x_n]/(x_1^p..x_n^p)
//! and vector fields (derivations) acting on it.
//!
//! Monomials are indexed lexicographically by exponent sequence: the
//! exponent of x_1 is the most significant digit of a base-p expansion.

use crate::linalg::FieldSpec;

/// Dense polynomial, indexed by monomial index.
pub(crate) type Poly = Vec<u64>;

#[derive(Clone, Debug)]
pub(crate) struct PolyAlgebra {
    pub field: FieldSpec,
    pub n: usize,
    /// p^n
    pub dim: usize,
    /// strides[k] = p^{n-1-k}
    strides: Vec<usize>,
}

impl PolyAlgebra {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        let p = field.p() as usize;
        let dim = p.pow(n as u32);
        let strides = (0..n).map(|k| p.pow((n - 1 - k) as u32)).collect();
        PolyAlgebra {
            field,
            n,
            dim,
            strides,
        }
    }

    #[inline]
    pub fn exponent(&self, idx: usize, k: usize) -> usize {
        (idx / self.strides[k]) % self.field.p() as usize
    }

    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        (0..self.n).map(|k| self.exponent(idx, k)).collect()
    }

    pub fn index(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.strides).map(|(&a, &s)| a * s).sum()
    }

    pub fn zero(&self) -> Poly {
        vec![0; self.dim]
    }

    pub fn monomial(&self, idx: usize, coeff: u64) -> Poly {
        let mut p = self.zero();
        p[idx] = coeff;
        p
    }

    /// x_k as a polynomial.
    pub fn generator(&self, k: usize) -> Poly {
        self.monomial(self.strides[k], 1)
    }

    /// Truncated product: monomials with any exponent reaching p vanish.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Poly {
        let f = self.field;
        let p = f.p() as usize;
        let mut out = self.zero();
        for (ia, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            'outer: for (ib, &cb) in b.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                for k in 0..self.n {
                    if self.exponent(ia, k) + self.exponent(ib, k) >= p {
                        continue 'outer;
                    }
                }
                let idx = ia + ib;
                out[idx] = f.mul_add(out[idx], ca, cb);
            }
        }
        out
    }

    /// Partial derivative with respect to x_k.
    pub fn derivative(&self, a: &[u64], k: usize) -> Poly {
        let f = self.field;
        let mut out = self.zero();
        let s = self.strides[k];
        for (idx, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.exponent(idx, k);
            if e == 0 {
                continue;
            }
            out[idx - s] = f.add(out[idx - s], f.mul(e as u64, c));
        }
        out
    }
}

/// A derivation of O(n): sum_k comps[k] * d/dx_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VectorField {
    pub comps: Vec<Poly>,
}

impl VectorField {
    pub fn zero(ring: &PolyAlgebra) -> Self {
        VectorField {
            comps: vec![ring.zero(); ring.n],
        }
    }

    #[cfg(test)]
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.iter().all(|&x| x == 0))
    }

    /// Apply the derivation to a polynomial.
    pub fn apply(&self, ring: &PolyAlgebra, g: &Poly) -> Poly {
        let f = ring.field;
        let mut out = ring.zero();
        for (k, comp) in self.comps.iter().enumerate() {
            if comp.iter().all(|&c| c == 0) {
                continue;
            }
            let dg = ring.derivative(g, k);
            if dg.iter().all(|&c| c == 0) {
                continue;
            }
            let prod = ring.mul(comp, &dg);
            for (slot, c) in out.iter_mut().zip(prod) {
                *slot = f.add(*slot, c);
            }
        }
        out
    }

    /// Commutator of derivations, determined by its values on generators:
    /// [D, E](x_k) = D(E(x_k)) - E(D(x_k)).
    #[cfg(test)]
    pub fn bracket(ring: &PolyAlgebra, a: &VectorField, b: &VectorField) -> VectorField {
        let f = ring.field;
        let mut comps = Vec::with_capacity(ring.n);
        for k in 0..ring.n {
            let de = a.apply(ring, &b.comps[k]);
            let ed = b.apply(ring, &a.comps[k]);
            let comp = de.iter().zip(&ed).map(|(&x, &y)| f.sub(x, y)).collect();
            comps.push(comp);
        }
        VectorField { comps }
    }

    /// p-fold operator composition. In characteristic p the p-th power of
    /// a derivation is again a derivation, so it is determined by its
    /// values on the generators.
    pub fn p_power(&self, ring: &PolyAlgebra) -> VectorField {
        let p = ring.field.p();
        let mut comps = Vec::with_capacity(ring.n);
        for k in 0..ring.n {
            let mut g = ring.generator(k);
            for _ in 0..p {
                g = self.apply(ring, &g);
            }
            comps.push(g);
        }
        VectorField { comps }
    }
}
