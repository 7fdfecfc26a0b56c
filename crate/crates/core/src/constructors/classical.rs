//! The classical restricted simple algebras in scope: sl(m) for p not
//! dividing m, and psl(m) = sl(m)/center for p dividing m.
//!
//! Basis for sl(m): the off-diagonal matrix units E_ab (a != b) in
//! lexicographic order, then H_a = E_aa - E_{a+1,a+1} for a = 1..m-1.
//! The [p]-map is the associative matrix p-th power.

use crate::algebra::{AlgebraDescription, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Dense m x m matrix over GF(p), row-major.
#[derive(Clone, Debug, PartialEq)]
struct Mat {
    m: usize,
    data: Vec<u64>,
}

impl Mat {
    fn zero(m: usize) -> Self {
        Mat {
            m,
            data: vec![0; m * m],
        }
    }

    #[inline]
    fn at(&self, a: usize, b: usize) -> u64 {
        self.data[a * self.m + b]
    }

    #[inline]
    fn set(&mut self, a: usize, b: usize, v: u64) {
        self.data[a * self.m + b] = v;
    }

    fn mul(&self, f: FieldSpec, other: &Mat) -> Mat {
        let m = self.m;
        let mut out = Mat::zero(m);
        for a in 0..m {
            for k in 0..m {
                let v = self.at(a, k);
                if v == 0 {
                    continue;
                }
                for b in 0..m {
                    let w = other.at(k, b);
                    if w != 0 {
                        let cur = out.at(a, b);
                        out.set(a, b, f.mul_add(cur, v, w));
                    }
                }
            }
        }
        out
    }

    fn commutator(&self, f: FieldSpec, other: &Mat) -> Mat {
        let ab = self.mul(f, other);
        let ba = other.mul(f, self);
        let mut out = Mat::zero(self.m);
        for i in 0..self.m * self.m {
            out.data[i] = f.sub(ab.data[i], ba.data[i]);
        }
        out
    }

    fn pow(&self, f: FieldSpec, e: u64) -> Mat {
        let mut acc = Mat::zero(self.m);
        for a in 0..self.m {
            acc.set(a, a, 1);
        }
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    fn trace(&self, f: FieldSpec) -> u64 {
        let mut t = 0;
        for a in 0..self.m {
            t = f.add(t, self.at(a, a));
        }
        t
    }
}

/// Off-diagonal pairs (a, b), a != b, in lexicographic order.
fn offdiag_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a != b {
                out.push((a, b));
            }
        }
    }
    out
}

struct SlBasis {
    field: FieldSpec,
    m: usize,
    mats: Vec<Mat>,
    labels: Vec<String>,
}

impl SlBasis {
    fn new(field: FieldSpec, m: usize) -> Self {
        let mut mats = Vec::new();
        let mut labels = Vec::new();
        for (a, b) in offdiag_pairs(m) {
            let mut e = Mat::zero(m);
            e.set(a, b, 1);
            mats.push(e);
            labels.push(format!("E_{}_{}", a + 1, b + 1));
        }
        for a in 0..m - 1 {
            let mut h = Mat::zero(m);
            h.set(a, a, 1);
            h.set(a + 1, a + 1, field.p() - 1);
            mats.push(h);
            labels.push(format!("H_{}", a + 1));
        }
        SlBasis {
            field,
            m,
            mats,
            labels,
        }
    }

    fn dim(&self) -> usize {
        self.m * self.m - 1
    }

    /// Coordinates of a traceless matrix in the sl basis.
    fn coords(&self, mat: &Mat) -> Result<SparseVec> {
        let f = self.field;
        if mat.trace(f) != 0 {
            return Err(Error::MalformedMatrix("matrix is not traceless".into()));
        }
        let m = self.m;
        let mut out: SparseVec = Vec::new();
        for (k, (a, b)) in offdiag_pairs(m).into_iter().enumerate() {
            let v = mat.at(a, b);
            if v != 0 {
                out.push((k as u32, v));
            }
        }
        // Diagonal part: partial sums give the H coefficients.
        let base = m * (m - 1);
        let mut s = 0u64;
        for a in 0..m - 1 {
            s = f.add(s, mat.at(a, a));
            if s != 0 {
                out.push(((base + a) as u32, s));
            }
        }
        Ok(out)
    }
}

/// sl(m): traceless m x m matrices, requires p not dividing m.
pub fn construct_sl(m: usize, p: u64, max_dim: usize) -> Result<AlgebraDescription> {
    let field = FieldSpec::new(p)?;
    if m < 2 {
        return Err(Error::Divisibility("sl(m) requires m >= 2".into()));
    }
    if (m as u64).is_multiple_of(p) {
        return Err(Error::Divisibility(format!(
            "sl({m}) over GF({p}) is not simple (p divides m); use psl"
        )));
    }
    let basis = SlBasis::new(field, m);
    let d = basis.dim();
    if d > max_dim {
        return Err(Error::ResourceGuard(format!(
            "sl({m}) has dimension {d} > limit {max_dim}"
        )));
    }
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let c = basis.mats[i].commutator(field, &basis.mats[j]);
            let coords = basis.coords(&c)?;
            if !coords.is_empty() {
                brackets.push(((i, j), coords));
            }
        }
    }
    let mut pmap = Vec::new();
    for i in 0..d {
        let pw = basis.mats[i].pow(field, p);
        let coords = basis.coords(&pw)?; // traceless is verified inside
        if !coords.is_empty() {
            pmap.push((i, coords));
        }
    }
    AlgebraDescription::new(field, d, Some(basis.labels.clone()), brackets, pmap)
        .map(|alg| alg.with_name(&format!("sl({m})")))
}

struct PslBasis {
    field: FieldSpec,
    m: usize,
    /// Representative matrices of the quotient basis: all E_ab, then
    /// H_1..H_{m-2}.
    mats: Vec<Mat>,
    labels: Vec<String>,
}

impl PslBasis {
    fn new(field: FieldSpec, m: usize) -> Self {
        let sl = SlBasis::new(field, m);
        let keep = m * (m - 1) + (m - 2);
        PslBasis {
            field,
            m,
            mats: sl.mats[..keep].to_vec(),
            labels: sl.labels[..keep].to_vec(),
        }
    }

    fn dim(&self) -> usize {
        self.m * self.m - 2
    }

    /// Coordinates of a traceless matrix modulo the center F.I.
    ///
    /// diag = sum c_a H_a + g I with partial sums s_a = c_a + a g and
    /// c_{m-1} = 0, so g = s_{m-1} / (m-1).
    fn coords(&self, mat: &Mat) -> Result<SparseVec> {
        let f = self.field;
        let m = self.m;
        if mat.trace(f) != 0 {
            return Err(Error::MalformedMatrix("matrix is not traceless".into()));
        }
        let mut out: SparseVec = Vec::new();
        for (k, (a, b)) in offdiag_pairs(m).into_iter().enumerate() {
            let v = mat.at(a, b);
            if v != 0 {
                out.push((k as u32, v));
            }
        }
        let base = m * (m - 1);
        let mut partial = vec![0u64; m];
        let mut s = 0u64;
        for a in 0..m {
            s = f.add(s, mat.at(a, a));
            partial[a] = s;
        }
        let g = f.mul(partial[m - 2], f.inv(f.reduce(m as u64 - 1))?);
        for a in 0..m - 2 {
            let c = f.sub(partial[a], f.mul((a as u64 + 1) % f.p(), g));
            if c != 0 {
                out.push(((base + a) as u32, c));
            }
        }
        Ok(out)
    }
}

/// psl(m) = sl(m) / F.I, requires p dividing m.
pub fn construct_psl(m: usize, p: u64, max_dim: usize) -> Result<AlgebraDescription> {
    let field = FieldSpec::new(p)?;
    if m < 2 {
        return Err(Error::Divisibility("psl(m) requires m >= 2".into()));
    }
    if !(m as u64).is_multiple_of(p) {
        return Err(Error::Divisibility(format!(
            "psl({m}) over GF({p}) requires p | m; use sl"
        )));
    }
    let basis = PslBasis::new(field, m);
    let d = basis.dim();
    if d > max_dim {
        return Err(Error::ResourceGuard(format!(
            "psl({m}) has dimension {d} > limit {max_dim}"
        )));
    }
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let c = basis.mats[i].commutator(field, &basis.mats[j]);
            let coords = basis.coords(&c)?;
            if !coords.is_empty() {
                brackets.push(((i, j), coords));
            }
        }
    }
    // The induced [p]-map is well defined because the center is spanned by
    // I with I^p = I.
    let mut pmap = Vec::new();
    for i in 0..d {
        let pw = basis.mats[i].pow(field, p);
        let coords = basis.coords(&pw)?;
        if !coords.is_empty() {
            pmap.push((i, coords));
        }
    }
    AlgebraDescription::new(field, d, Some(basis.labels.clone()), brackets, pmap)
        .map(|alg| alg.with_name(&format!("psl({m})")))
}
