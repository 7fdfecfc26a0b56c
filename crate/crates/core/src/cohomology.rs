//! Ordinary Chevalley-Eilenberg cohomology with trivial coefficients:
//! the differentials in degrees one and two, canonical H^2 representatives,
//! coboundary membership, and the Delta obstruction map.
//!
//! Two-cochains are stored densely on ordered basis pairs (i < j) in
//! lexicographic order; triples likewise index the rows of delta^2.

use rayon::prelude::*;

use crate::algebra::{AlgebraDescription, ElementVector, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{RowReducer, SparseMatrix};

/// Default dimension bound for full cohomology runs.
pub const DEFAULT_COHOMOLOGY_LIMIT: usize = 300;

/// Default row budget for materializing delta^2 as a matrix.
pub const DEFAULT_DELTA2_ROW_LIMIT: usize = 8_000_000;

/// Number of ordered pairs i < j below d.
pub fn pair_count(d: usize) -> usize {
    d * (d - 1) / 2
}

/// Number of ordered triples i < j < k below d.
pub fn triple_count(d: usize) -> usize {
    d * (d - 1) * (d - 2) / 6
}

/// Lexicographic index of the pair (i, j), i < j.
#[inline]
pub fn pair_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < d);
    i * (2 * d - i - 1) / 2 + (j - i - 1)
}

/// A linear functional on the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCochain {
    pub values: Vec<u64>,
}

impl OneCochain {
    pub fn zero(d: usize) -> Self {
        OneCochain { values: vec![0; d] }
    }

    pub fn dual_basis(d: usize, i: usize) -> Self {
        let mut values = vec![0; d];
        values[i] = 1;
        OneCochain { values }
    }

    pub fn eval(&self, alg: &AlgebraDescription, v: &ElementVector) -> u64 {
        alg.field().dot(&self.values, &v.coords)
    }
}

/// An alternating bilinear form on the algebra, stored on ordered basis
/// pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochain {
    dim: usize,
    pub values: Vec<u64>,
}

impl TwoCochain {
    pub fn zero(dim: usize) -> Self {
        TwoCochain {
            dim,
            values: vec![0; pair_count(dim)],
        }
    }

    pub fn from_values(dim: usize, values: Vec<u64>) -> Result<Self> {
        if values.len() != pair_count(dim) {
            return Err(Error::DimensionMismatch {
                expected: pair_count(dim),
                got: values.len(),
            });
        }
        Ok(TwoCochain { dim, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&c| c == 0)
    }

    /// Value on the ordered basis pair (i, j); evaluation on (j, i)
    /// negates and the diagonal vanishes.
    pub fn eval_pair(&self, alg: &AlgebraDescription, i: usize, j: usize) -> u64 {
        if i == j {
            return 0;
        }
        if i < j {
            self.values[pair_index(self.dim, i, j)]
        } else {
            alg.field().neg(self.values[pair_index(self.dim, j, i)])
        }
    }

    /// Bilinear evaluation on arbitrary elements.
    pub fn eval(&self, alg: &AlgebraDescription, u: &ElementVector, v: &ElementVector) -> u64 {
        let f = alg.field();
        let d = self.dim;
        let chunk = f.accum_chunk();
        let mut total = 0u64;
        let mut acc = 0u64;
        let mut terms = 0usize;
        let mut idx = 0usize;
        for i in 0..d {
            let (ui, vi) = (u.coords[i], v.coords[i]);
            if ui == 0 && vi == 0 {
                idx += d - i - 1;
                continue;
            }
            for j in (i + 1)..d {
                let w = self.values[idx];
                idx += 1;
                if w == 0 {
                    continue;
                }
                let coef = f.sub(f.mul(ui, v.coords[j]), f.mul(u.coords[j], vi));
                acc += coef * w;
                terms += 1;
                if terms == chunk {
                    total = f.add(total, acc % f.p());
                    acc = 0;
                    terms = 0;
                }
            }
        }
        f.add(total, acc % f.p())
    }

    /// acc[l] += alpha * phi(x_j, x_l) for every l.
    pub(crate) fn add_scaled_basis_row(
        &self,
        alg: &AlgebraDescription,
        j: usize,
        alpha: u64,
        acc: &mut [u64],
    ) {
        if alpha == 0 {
            return;
        }
        let f = alg.field();
        let d = self.dim;
        for l in 0..d {
            if l == j {
                continue;
            }
            let v = if j < l {
                self.values[pair_index(d, j, l)]
            } else {
                f.neg(self.values[pair_index(d, l, j)])
            };
            if v != 0 {
                acc[l] = f.mul_add(acc[l], alpha, v);
            }
        }
    }

    /// phi(u, x_j) for all j at once; cost one sweep of the value table.
    pub(crate) fn left_contraction(&self, alg: &AlgebraDescription, u: &[u64]) -> Vec<u64> {
        let f = alg.field();
        let d = self.dim;
        let mut out = vec![0u64; d];
        let mut idx = 0;
        for i in 0..d {
            for j in (i + 1)..d {
                let w = self.values[idx];
                idx += 1;
                if w == 0 {
                    continue;
                }
                if u[i] != 0 {
                    out[j] = f.mul_add(out[j], u[i], w);
                }
                if u[j] != 0 {
                    out[i] = f.sub(out[i], f.mul(u[j], w));
                }
            }
        }
        out
    }
}

/// Dimensions and canonical representatives of the second cohomology.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub h1_dim: usize,
    pub h2_dim: usize,
    pub h2_reps: Vec<TwoCochain>,
    pub delta1_rank: usize,
    pub delta2_kernel_dim: usize,
}

/// The matrix of delta^1: row (i, j) holds the coordinates of [x_i, x_j].
pub fn delta1_matrix(alg: &AlgebraDescription) -> SparseMatrix {
    let d = alg.dim();
    let mut triples = Vec::new();
    for (i, j, coords) in alg.bracket_pairs() {
        let row = pair_index(d, i, j) as u32;
        for &(l, c) in coords {
            triples.push((row, l, c));
        }
    }
    SparseMatrix::new(alg.field(), pair_count(d), d, triples)
        .expect("structure constants are canonical")
}

/// One row of delta^2 for the triple (i, j, k):
/// phi([x_i,x_j], x_k) - phi([x_i,x_k], x_j) + phi([x_j,x_k], x_i).
fn delta2_row(alg: &AlgebraDescription, i: usize, j: usize, k: usize) -> SparseVec {
    let d = alg.dim();
    let f = alg.field();
    let mut buf: SparseVec = Vec::with_capacity(8);
    let mut term = |a: usize, b: usize, m: usize, negate: bool| {
        for &(l, c) in alg.bracket_basis(a, b) {
            let l = l as usize;
            if l == m {
                continue;
            }
            let mut val = c;
            if negate {
                val = f.neg(val);
            }
            let idx = if l < m {
                pair_index(d, l, m)
            } else {
                val = f.neg(val);
                pair_index(d, m, l)
            };
            buf.push((idx as u32, val));
        }
    };
    term(i, j, k, false);
    term(i, k, j, true);
    term(j, k, i, false);
    buf.sort_unstable_by_key(|&(c, _)| c);
    let mut out: SparseVec = Vec::with_capacity(buf.len());
    for (c, v) in buf {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add(last.1, v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// Materialized delta^2 (triples x pairs). Guarded by a row budget; the
/// cohomology pipeline streams rows instead of calling this.
pub fn delta2_matrix(alg: &AlgebraDescription, max_rows: usize) -> Result<SparseMatrix> {
    let d = alg.dim();
    let rows = triple_count(d);
    if rows > max_rows {
        return Err(Error::ResourceGuard(format!(
            "delta^2 has {rows} rows > budget {max_rows}"
        )));
    }
    let mut triples = Vec::new();
    let mut row = 0u32;
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                for (c, v) in delta2_row(alg, i, j, k) {
                    triples.push((row, c, v));
                }
                row += 1;
            }
        }
    }
    SparseMatrix::new(alg.field(), rows, pair_count(d), triples)
}

/// Streams every row of delta^2 into a reducer, generating rows in
/// parallel batches but inserting them in lexicographic order.
pub(crate) fn delta2_reduce(alg: &AlgebraDescription) -> RowReducer {
    let d = alg.dim();
    let mut red = RowReducer::new(alg.field(), pair_count(d));
    for i in 0..d {
        let batch: Vec<SparseVec> = ((i + 1)..d)
            .into_par_iter()
            .flat_map_iter(|j| ((j + 1)..d).map(move |k| (j, k)))
            .map(|(j, k)| delta2_row(alg, i, j, k))
            .collect();
        for row in &batch {
            red.push_row(row);
        }
    }
    red
}

/// Reduced echelon basis of the image of delta^1 inside the pair space.
pub(crate) fn delta1_image(alg: &AlgebraDescription) -> RowReducer {
    let d = alg.dim();
    let mut columns: Vec<SparseVec> = vec![Vec::new(); d];
    for (i, j, coords) in alg.bracket_pairs() {
        let row = pair_index(d, i, j) as u32;
        for &(l, c) in coords {
            columns[l as usize].push((row, c));
        }
    }
    let mut red = RowReducer::new(alg.field(), pair_count(d));
    for mut col in columns {
        col.sort_unstable_by_key(|&(r, _)| r);
        red.push_row(&col);
    }
    red
}

/// Checks delta^2(phi) = 0 by streaming the rows of delta^2.
pub fn is_cocycle(alg: &AlgebraDescription, phi: &TwoCochain) -> Result<bool> {
    if phi.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: phi.dim(),
        });
    }
    if phi.is_zero() {
        return Ok(true);
    }
    let d = alg.dim();
    let f = alg.field();
    let ok = (0..d).into_par_iter().all(|i| {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                let mut acc = 0u64;
                for (c, v) in delta2_row(alg, i, j, k) {
                    acc = f.mul_add(acc, v, phi.values[c as usize]);
                }
                if acc != 0 {
                    return false;
                }
            }
        }
        true
    });
    Ok(ok)
}

/// Full second-cohomology computation: dimensions plus canonical
/// representatives (kernel vectors reduced modulo the image of delta^1,
/// then echelonized).
pub fn h2_basis(alg: &AlgebraDescription, max_dim: usize) -> Result<CohomologyReport> {
    let d = alg.dim();
    if d > max_dim {
        return Err(Error::ResourceGuard(format!(
            "cohomology of a {d}-dimensional algebra exceeds limit {max_dim}"
        )));
    }
    let delta1 = delta1_matrix(alg);
    let delta1_rank = delta1.rank();
    let h1_dim = d - delta1_rank;

    let image = delta1_image(alg);
    debug_assert_eq!(image.rank(), delta1_rank);

    let kernel_red = delta2_reduce(alg);
    let delta2_kernel_dim = pair_count(d) - kernel_red.rank();

    let mut reps_red = RowReducer::new(alg.field(), pair_count(d));
    for v in kernel_red.kernel_basis() {
        let reduced = image.reduce_dense(&v);
        let sparse: SparseVec = reduced
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(c, &v)| (c as u32, v))
            .collect();
        if !sparse.is_empty() {
            reps_red.push_row(&sparse);
        }
    }
    let h2_dim = delta2_kernel_dim - delta1_rank;
    debug_assert_eq!(reps_red.rank(), h2_dim);
    let h2_reps = reps_red
        .dense_rows()
        .into_iter()
        .map(|v| TwoCochain::from_values(d, v).expect("row length matches"))
        .collect();
    Ok(CohomologyReport {
        h1_dim,
        h2_dim,
        h2_reps,
        delta1_rank,
        delta2_kernel_dim,
    })
}

/// Solves delta^1(psi) = phi. Returns None when phi is a nontrivial
/// cocycle; errors when phi is not a cocycle at all.
pub fn is_coboundary(alg: &AlgebraDescription, phi: &TwoCochain) -> Result<Option<OneCochain>> {
    if !is_cocycle(alg, phi)? {
        return Err(Error::NotCocycle);
    }
    let d = alg.dim();
    let f = alg.field();
    // Augmented system [delta1 | phi] over columns 0..d plus one.
    let mut red = RowReducer::new(f, d + 1);
    for (i, j, coords) in alg.bracket_pairs() {
        let mut row: SparseVec = coords.clone();
        let rhs = phi.values[pair_index(d, i, j)];
        if rhs != 0 {
            row.push((d as u32, rhs));
        }
        red.push_row(&row);
    }
    // Pairs with zero bracket force phi to vanish there.
    {
        let mut idx = 0;
        for i in 0..d {
            for j in (i + 1)..d {
                if alg.bracket_is_zero(i, j) && phi.values[idx] != 0 {
                    return Ok(None);
                }
                idx += 1;
            }
        }
    }
    if red.is_pivot_col(d) {
        return Ok(None);
    }
    let mut psi = vec![0u64; d];
    for (pivot, entries) in red.sparse_rows() {
        if let Some(&(_, v)) = entries.iter().find(|&&(c, _)| c as usize == d) {
            psi[pivot as usize] = v;
        }
    }
    let psi = OneCochain { values: psi };
    // Confirm the solve.
    let delta_psi = delta1_matrix(alg).mul_vec(&psi.values)?;
    if delta_psi != phi.values {
        return Ok(None);
    }
    Ok(Some(psi))
}

/// The Delta obstruction evaluated at (g, h):
/// phi(g, h^{[p]}) - phi([g, h, ..., h], h) with p-1 nested brackets.
pub fn delta_map(
    alg: &AlgebraDescription,
    phi: &TwoCochain,
    g: &ElementVector,
    h: &ElementVector,
) -> Result<u64> {
    let f = alg.field();
    let hp = alg.p_power_eval(h)?;
    let first = phi.eval(alg, g, &hp);
    let nested = alg.iterated_bracket(g, h, (f.p() - 1) as usize)?;
    let second = phi.eval(alg, &nested, h);
    Ok(f.sub(first, second))
}
