//! Exact sparse matrices over GF(p): rank, kernel bases, reduced echelon
//! forms, and reduction modulo an echelonized image.
//!
//! The workhorse is [`RowReducer`], a streaming reduced-row-echelon
//! accumulator. Rows are fed one at a time; each is reduced against the
//! current pivot rows with a dense scratch accumulator, and every time a
//! new pivot appears the existing rows are back-substituted so the stored
//! rows always form a reduced echelon basis of the row space seen so far.
//! The reduced echelon form of a subspace is unique, so the outputs do
//! not depend on row order or on how work is scheduled.

use super::field::FieldSpec;
use crate::error::{Error, Result};

const NO_PIVOT: u32 = u32::MAX;

/// A sparse matrix over GF(p) stored as sorted (row, col, value) triples.
///
/// Invariants: no duplicate (row, col) pairs, no stored zeros, all values
/// in `1..p-1`, triples sorted by (row, col).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, u64)>,
}

impl SparseMatrix {
    /// Builds a matrix from entry triples, validating the invariants.
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut entries: Vec<(u32, u32, u64)>,
    ) -> Result<Self> {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::MalformedMatrix(format!(
                    "duplicate entry at ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        for &(r, c, v) in &entries {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::MalformedMatrix(format!(
                    "entry ({r}, {c}) outside {rows} x {cols}"
                )));
            }
            if v == 0 || v >= field.p() {
                return Err(Error::MalformedMatrix(format!(
                    "value {v} at ({r}, {c}) not in 1..p-1"
                )));
            }
        }
        Ok(SparseMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        SparseMatrix {
            field,
            rows: n,
            cols: n,
            entries: (0..n as u32).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, u32, u64)] {
        &self.entries
    }

    /// Iterates rows as (col, value) slices without materializing them.
    pub fn for_each_row(&self, mut f: impl FnMut(usize, &[(u32, u64)])) {
        let mut buf: Vec<(u32, u64)> = Vec::new();
        let mut idx = 0;
        for r in 0..self.rows {
            buf.clear();
            while idx < self.entries.len() && self.entries[idx].0 as usize == r {
                buf.push((self.entries[idx].1, self.entries[idx].2));
                idx += 1;
            }
            f(r, &buf);
        }
    }

    /// Matrix-vector product over GF(p).
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = self.field;
        let mut out = vec![0u64; self.rows];
        for &(r, c, val) in &self.entries {
            let slot = &mut out[r as usize];
            *slot = f.mul_add(*slot, val, v[c as usize]);
        }
        Ok(out)
    }

    /// Exact rank over GF(p).
    pub fn rank(&self) -> usize {
        self.reduce().rank()
    }

    /// Canonical basis of the right null space.
    ///
    /// Each basis vector corresponds to one free column `f` of the reduced
    /// echelon form: it carries 1 at position `f` and the solved pivot
    /// coefficients elsewhere. Vectors are ordered by ascending free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        self.reduce().kernel_basis()
    }

    /// Reduced row echelon form of the row space, as dense rows with
    /// leading ones and ascending pivot columns.
    pub fn rref(&self) -> Vec<Vec<u64>> {
        self.reduce().dense_rows()
    }

    pub fn reduce(&self) -> RowReducer {
        let mut red = RowReducer::new(self.field, self.cols);
        self.for_each_row(|_, row| {
            red.push_row(row);
        });
        red
    }
}

/// Subtracts `v`'s projection onto the span of `image_basis` (rows in
/// reduced echelon form with leading ones). The result is zero at every
/// pivot column of the basis.
pub fn reduce_mod_image(field: FieldSpec, v: &[u64], image_basis: &[Vec<u64>]) -> Result<Vec<u64>> {
    let mut out = v.to_vec();
    for row in image_basis {
        if row.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                got: row.len(),
            });
        }
        let pivot = match row.iter().position(|&x| x != 0) {
            Some(c) => c,
            None => continue,
        };
        debug_assert_eq!(row[pivot], 1, "image basis must have leading ones");
        let coef = out[pivot];
        if coef == 0 {
            continue;
        }
        for (slot, &rv) in out.iter_mut().zip(row.iter()) {
            if rv != 0 {
                *slot = field.sub(*slot, field.mul(coef, rv));
            }
        }
    }
    Ok(out)
}

/// One stored pivot row: sorted (col, value) entries, the first of which
/// is `(pivot, 1)`.
#[derive(Clone, Debug)]
struct PivotRow {
    pivot: u32,
    entries: Vec<(u32, u64)>,
}

/// Streaming reduced-row-echelon accumulator over GF(p).
pub struct RowReducer {
    field: FieldSpec,
    cols: usize,
    rows: Vec<PivotRow>,
    /// col -> index into `rows`, or NO_PIVOT.
    pivot_of_col: Vec<u32>,
    /// col -> rows with a (possibly stale) nonzero entry at that column.
    users: Vec<Vec<u32>>,
    scratch: Vec<u64>,
    touched: Vec<u32>,
    in_scratch: Vec<bool>,
}

impl RowReducer {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        RowReducer {
            field,
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![NO_PIVOT; cols],
            users: vec![Vec::new(); cols],
            scratch: vec![0; cols],
            touched: Vec::new(),
            in_scratch: vec![false; cols],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.rows.iter().map(|r| r.pivot as usize).collect();
        cols.sort_unstable();
        cols
    }

    pub fn is_pivot_col(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NO_PIVOT
    }

    /// Feeds one sparse row (sorted, reduced, no duplicate columns).
    /// Returns true when the row enlarged the row space.
    pub fn push_row(&mut self, row: &[(u32, u64)]) -> bool {
        let f = self.field;
        // Scatter the incoming row.
        for &(c, v) in row {
            debug_assert!((c as usize) < self.cols);
            let v = f.reduce(v);
            if v == 0 {
                continue;
            }
            let cu = c as usize;
            if !self.in_scratch[cu] {
                self.in_scratch[cu] = true;
                self.touched.push(c);
                self.scratch[cu] = v;
            } else {
                self.scratch[cu] = f.add(self.scratch[cu], v);
            }
        }
        self.reduce_scratch_and_insert()
    }

    /// Reduces a dense vector against the current rows without mutating
    /// the reducer state.
    pub fn reduce_dense(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = v.to_vec();
        // Rows are fully reduced, so a single ascending pass over the
        // pivot columns suffices.
        for c in 0..self.cols {
            let ridx = self.pivot_of_col[c];
            if ridx == NO_PIVOT {
                continue;
            }
            let coef = out[c];
            if coef == 0 {
                continue;
            }
            for &(cc, vv) in &self.rows[ridx as usize].entries {
                out[cc as usize] = f.sub(out[cc as usize], f.mul(coef, vv));
            }
        }
        out
    }

    fn reduce_scratch_and_insert(&mut self) -> bool {
        let f = self.field;
        // Eliminate pivot positions of the original support in ascending
        // column order. Pivot rows are fully reduced, so fill lands only on
        // columns without pivots and never cascades.
        self.touched.sort_unstable();
        let original = self.touched.len();
        for idx in 0..original {
            let c = self.touched[idx] as usize;
            let coef = self.scratch[c];
            if coef == 0 {
                continue;
            }
            let ridx = self.pivot_of_col[c];
            if ridx == NO_PIVOT {
                continue;
            }
            let row = &self.rows[ridx as usize];
            for &(cc, vv) in &row.entries {
                let cu = cc as usize;
                let sub = f.mul(coef, vv);
                if !self.in_scratch[cu] {
                    self.in_scratch[cu] = true;
                    self.touched.push(cc);
                    self.scratch[cu] = f.neg(sub);
                } else {
                    self.scratch[cu] = f.sub(self.scratch[cu], sub);
                }
            }
            debug_assert_eq!(self.scratch[c], 0);
        }
        // Gather the remainder.
        let mut remainder: Vec<(u32, u64)> = Vec::new();
        for &c in &self.touched {
            let cu = c as usize;
            if self.scratch[cu] != 0 {
                remainder.push((c, self.scratch[cu]));
            }
            self.scratch[cu] = 0;
            self.in_scratch[cu] = false;
        }
        self.touched.clear();
        if remainder.is_empty() {
            return false;
        }
        remainder.sort_unstable_by_key(|&(c, _)| c);
        // Normalize to a leading one.
        let (pivot, lead) = remainder[0];
        debug_assert!(self.pivot_of_col[pivot as usize] == NO_PIVOT);
        let scale = f.inv(lead).expect("leading entry is nonzero");
        if scale != 1 {
            for e in remainder.iter_mut() {
                e.1 = f.mul(e.1, scale);
            }
        }
        let new_idx = self.rows.len() as u32;
        // Back-substitute the new pivot column out of existing rows.
        let user_list = std::mem::take(&mut self.users[pivot as usize]);
        for ridx in user_list {
            self.eliminate_col_from_row(ridx as usize, pivot, &remainder);
        }
        for &(c, _) in &remainder[1..] {
            self.users[c as usize].push(new_idx);
        }
        self.pivot_of_col[pivot as usize] = new_idx;
        self.rows.push(PivotRow {
            pivot,
            entries: remainder,
        });
        true
    }

    /// rows[ridx] -= rows[ridx][col] * new_row, merging sorted supports.
    fn eliminate_col_from_row(&mut self, ridx: usize, col: u32, new_row: &[(u32, u64)]) {
        let f = self.field;
        let coef = {
            let row = &self.rows[ridx];
            match row.entries.binary_search_by_key(&col, |e| e.0) {
                Ok(pos) => row.entries[pos].1,
                Err(_) => return, // stale user entry
            }
        };
        if coef == 0 {
            return;
        }
        let old = std::mem::take(&mut self.rows[ridx].entries);
        let mut merged = Vec::with_capacity(old.len() + new_row.len());
        let mut a = old.iter().peekable();
        let mut b = new_row.iter().peekable();
        let mut added: Vec<u32> = Vec::new();
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ca, va)), Some(&&(cb, vb))) => {
                    if ca < cb {
                        merged.push((ca, va));
                        a.next();
                    } else if cb < ca {
                        let v = f.neg(f.mul(coef, vb));
                        if v != 0 {
                            merged.push((cb, v));
                            added.push(cb);
                        }
                        b.next();
                    } else {
                        let v = f.sub(va, f.mul(coef, vb));
                        if v != 0 {
                            merged.push((ca, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&(ca, va)), None) => {
                    merged.push((ca, va));
                    a.next();
                }
                (None, Some(&&(cb, vb))) => {
                    let v = f.neg(f.mul(coef, vb));
                    if v != 0 {
                        merged.push((cb, v));
                        added.push(cb);
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
        for c in added {
            self.users[c as usize].push(ridx as u32);
        }
        self.rows[ridx].entries = merged;
    }

    /// The reduced echelon rows, ordered by pivot column, as dense vectors.
    pub fn dense_rows(&self) -> Vec<Vec<u64>> {
        let mut order: Vec<&PivotRow> = self.rows.iter().collect();
        order.sort_unstable_by_key(|r| r.pivot);
        order
            .into_iter()
            .map(|r| {
                let mut v = vec![0u64; self.cols];
                for &(c, val) in &r.entries {
                    v[c as usize] = val;
                }
                v
            })
            .collect()
    }

    /// The reduced echelon rows, ordered by pivot column, as sparse rows.
    pub fn sparse_rows(&self) -> Vec<(u32, Vec<(u32, u64)>)> {
        let mut order: Vec<&PivotRow> = self.rows.iter().collect();
        order.sort_unstable_by_key(|r| r.pivot);
        order
            .into_iter()
            .map(|r| (r.pivot, r.entries.clone()))
            .collect()
    }

    /// Canonical kernel basis (see [`SparseMatrix::kernel_basis`]).
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let free_cols: Vec<usize> = (0..self.cols)
            .filter(|&c| self.pivot_of_col[c] == NO_PIVOT)
            .collect();
        let slot_of_free: Vec<usize> = {
            let mut m = vec![usize::MAX; self.cols];
            for (k, &c) in free_cols.iter().enumerate() {
                m[c] = k;
            }
            m
        };
        let mut basis: Vec<Vec<u64>> = free_cols.iter().map(|_| vec![0u64; self.cols]).collect();
        for (k, &c) in free_cols.iter().enumerate() {
            basis[k][c] = 1;
        }
        for row in &self.rows {
            for &(c, v) in &row.entries[1..] {
                let k = slot_of_free[c as usize];
                debug_assert_ne!(k, usize::MAX, "non-pivot entries sit on free columns");
                basis[k][row.pivot as usize] = f.neg(v);
            }
        }
        basis
    }
}
