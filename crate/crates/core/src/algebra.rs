//! Restricted Lie algebras presented by structure constants and a basis
//! [p]-map.
//!
//! The bracket is stored sparsely for ordered basis pairs `i < j`; the
//! mirror direction is materialized with negated coordinates so that
//! `[x_i, x_j]` is a single lookup for any `i != j`. The [p]-map is stored
//! on basis vectors only; p-th powers of arbitrary elements are derived
//! through Jacobson's formula.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, RowReducer, SparseMatrix};

/// Sorted (index, nonzero scalar) pairs.
pub type SparseVec = Vec<(u32, u64)>;

/// An element written in the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementVector {
    pub coords: Vec<u64>,
}

impl ElementVector {
    pub fn zero(dim: usize) -> Self {
        ElementVector {
            coords: vec![0; dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = 1;
        ElementVector { coords }
    }

    pub fn from_coords(coords: Vec<u64>) -> Self {
        ElementVector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn to_sparse(&self) -> SparseVec {
        self.support().map(|(i, c)| (i as u32, c)).collect()
    }

    pub fn add(&self, field: FieldSpec, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| field.add(a, b))
            .collect();
        ElementVector { coords }
    }

    pub fn scale(&self, field: FieldSpec, c: u64) -> Self {
        let coords = self.coords.iter().map(|&a| field.mul(a, c)).collect();
        ElementVector { coords }
    }

    pub fn random(rng: &mut ChaCha12Rng, field: FieldSpec, dim: usize) -> Self {
        let coords = (0..dim).map(|_| rng.random_range(0..field.p())).collect();
        ElementVector { coords }
    }
}

fn add_scaled_sparse(field: FieldSpec, acc: &mut [u64], coeff: u64, sv: &[(u32, u64)]) {
    if coeff == 0 {
        return;
    }
    for &(l, c) in sv {
        let slot = &mut acc[l as usize];
        *slot = field.mul_add(*slot, coeff, c);
    }
}

/// First Jacobi identity violation found, with the offending triple and
/// the cyclic-sum residual.
#[derive(Clone, Debug)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vec<u64>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jacobi identity fails on triple ({}, {}, {}), residual {:?}",
            self.i, self.j, self.k, self.residual
        )
    }
}

/// Which restrictedness axiom failed, with a witness.
#[derive(Clone, Debug)]
pub enum RestrictednessFailure {
    /// ad(x_i^{[p]}) != (ad x_i)^p.
    AdPower { basis_index: usize },
    /// Jacobson additivity failed on a sampled pair.
    Additivity { sample: usize },
    /// ad((a v)^{[p]}) != (ad(a v))^p for a sampled scalar/vector pair.
    Semilinearity { sample: usize },
}

impl fmt::Display for RestrictednessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictednessFailure::AdPower { basis_index } => {
                write!(f, "ad(x_{basis_index}^[p]) != (ad x_{basis_index})^p")
            }
            RestrictednessFailure::Additivity { sample } => {
                write!(f, "Jacobson additivity fails on sample {sample}")
            }
            RestrictednessFailure::Semilinearity { sample } => {
                write!(f, "p-semilinearity fails on sample {sample}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RestrictednessReport {
    pub seed: u64,
    pub samples: usize,
    pub failures: Vec<RestrictednessFailure>,
}

impl RestrictednessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RestrictednessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "restrictedness: pass ({} samples, seed {})",
                self.samples, self.seed
            )
        } else {
            writeln!(
                f,
                "restrictedness: FAIL ({} samples, seed {})",
                self.samples, self.seed
            )?;
            for fail in &self.failures {
                writeln!(f, "  {fail}")?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityOutcome {
    Simple,
    /// A trial produced a proper nonzero ideal.
    Inconclusive {
        trial: usize,
        ideal_dim: usize,
    },
}

#[derive(Clone, Debug)]
pub struct SimplicityReport {
    pub outcome: SimplicityOutcome,
    pub trials: usize,
    pub seed: u64,
}

impl SimplicityReport {
    pub fn is_simple(&self) -> bool {
        self.outcome == SimplicityOutcome::Simple
    }
}

impl fmt::Display for SimplicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            SimplicityOutcome::Simple => {
                write!(
                    f,
                    "simplicity: pass ({} trials, seed {})",
                    self.trials, self.seed
                )
            }
            SimplicityOutcome::Inconclusive { trial, ideal_dim } => write!(
                f,
                "simplicity: inconclusive, trial {} produced a proper ideal of dim {} (seed {})",
                trial, ideal_dim, self.seed
            ),
        }
    }
}

/// A finite dimensional restricted Lie algebra over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescription {
    field: FieldSpec,
    dim: usize,
    /// Optional display name (the file format's `label` line).
    name: Option<String>,
    labels: Option<Vec<String>>,
    /// adj[i] lists (j, coordinates of [x_i, x_j]) for every j != i with a
    /// nonzero bracket, sorted by j. Both directions are materialized.
    adj: Vec<Vec<(u32, SparseVec)>>,
    pmap: Vec<SparseVec>,
}

impl AlgebraDescription {
    /// Builds an algebra from canonical bracket data `((i, j), [x_i, x_j])`
    /// with `i < j` and a basis [p]-map. Coordinates are normalized
    /// (reduced, sorted, zeros dropped); duplicate pairs are rejected.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        labels: Option<Vec<String>>,
        brackets: Vec<((usize, usize), SparseVec)>,
        pmap_entries: Vec<(usize, SparseVec)>,
    ) -> Result<Self> {
        if let Some(ref ls) = labels {
            if ls.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: ls.len(),
                });
            }
        }
        let mut adj: Vec<Vec<(u32, SparseVec)>> = vec![Vec::new(); dim];
        for ((i, j), coords) in brackets {
            if i >= j {
                return Err(Error::MalformedMatrix(format!(
                    "bracket pair ({i}, {j}) requires i < j"
                )));
            }
            if j >= dim {
                return Err(Error::IndexOutOfRange { index: j, dim });
            }
            let coords = normalize_sparse(field, dim, coords)?;
            if coords.is_empty() {
                continue;
            }
            if adj[i].iter().any(|&(jj, _)| jj as usize == j) {
                return Err(Error::MalformedMatrix(format!(
                    "duplicate bracket pair ({i}, {j})"
                )));
            }
            let neg: SparseVec = coords.iter().map(|&(l, c)| (l, field.neg(c))).collect();
            adj[i].push((j as u32, coords));
            adj[j].push((i as u32, neg));
        }
        for row in adj.iter_mut() {
            row.sort_unstable_by_key(|&(j, _)| j);
        }
        let mut pmap = vec![SparseVec::new(); dim];
        for (i, coords) in pmap_entries {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if !pmap[i].is_empty() {
                return Err(Error::MalformedMatrix(format!("duplicate pmap entry {i}")));
            }
            pmap[i] = normalize_sparse(field, dim, coords)?;
        }
        Ok(AlgebraDescription {
            field,
            dim,
            name: None,
            labels,
            adj,
            pmap,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => format!("x{i}"),
        }
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        self.labels = labels;
    }

    /// Canonical bracket pairs (i < j) with their coordinates.
    pub fn bracket_pairs(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .filter(move |&&(j, _)| (j as usize) > i)
                .map(move |(j, coords)| (i, *j as usize, coords))
        })
    }

    /// Coordinates of `[x_i, x_j]` for any `i != j` (empty slice if zero).
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, u64)] {
        debug_assert!(i != j);
        match self.adj[i].binary_search_by_key(&(j as u32), |e| e.0) {
            Ok(pos) => &self.adj[i][pos].1,
            Err(_) => &[],
        }
    }

    pub fn bracket_is_zero(&self, i: usize, j: usize) -> bool {
        i == j
            || self.adj[i]
                .binary_search_by_key(&(j as u32), |e| e.0)
                .is_err()
    }

    /// `x_i^{[p]}` as stored on the basis.
    pub fn p_power_basis(&self, i: usize) -> &SparseVec {
        &self.pmap[i]
    }

    /// acc += coeff * [x_j, v] for a dense v.
    pub(crate) fn add_bracket_basis_vec(&self, j: usize, v: &[u64], coeff: u64, acc: &mut [u64]) {
        if coeff == 0 {
            return;
        }
        let f = self.field;
        for (l, coords) in &self.adj[j] {
            let vl = v[*l as usize];
            if vl == 0 {
                continue;
            }
            add_scaled_sparse(f, acc, f.mul(coeff, vl), coords);
        }
    }

    /// The bilinear extension of the structure constants.
    pub fn bracket_eval(&self, u: &ElementVector, v: &ElementVector) -> Result<ElementVector> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let mut acc = vec![0u64; self.dim];
        self.bracket_eval_into(&u.coords, &v.coords, &mut acc);
        Ok(ElementVector { coords: acc })
    }

    pub(crate) fn bracket_eval_into(&self, u: &[u64], v: &[u64], acc: &mut [u64]) {
        let f = self.field;
        let supp_u = u.iter().filter(|&&c| c != 0).count();
        let supp_v = v.iter().filter(|&&c| c != 0).count();
        let total_adj: usize = self.adj.iter().map(|r| r.len()).sum();
        if supp_u * supp_v * 8 < total_adj {
            // Pair-lookup path for sparse arguments.
            for (i, &ui) in u.iter().enumerate() {
                if ui == 0 {
                    continue;
                }
                for (j, &vj) in v.iter().enumerate() {
                    if vj == 0 || i == j {
                        continue;
                    }
                    let coords = self.bracket_basis(i, j);
                    add_scaled_sparse(f, acc, f.mul(ui, vj), coords);
                }
            }
        } else {
            // Sweep the stored pairs once: [u, v] = sum (u_i v_j - u_j v_i) C_ij.
            for (i, row) in self.adj.iter().enumerate() {
                let ui = u[i];
                let vi = v[i];
                if ui == 0 && vi == 0 {
                    continue;
                }
                for (j, coords) in row {
                    let j = *j as usize;
                    if j < i {
                        continue;
                    }
                    let w = f.sub(f.mul(ui, v[j]), f.mul(u[j], vi));
                    add_scaled_sparse(f, acc, w, coords);
                }
            }
        }
    }

    /// The matrix of ad(v): column j holds `[v, x_j]`.
    pub fn ad_matrix(&self, v: &ElementVector) -> Result<SparseMatrix> {
        self.check_dim(v)?;
        let f = self.field;
        let d = self.dim;
        let mut cols: Vec<Vec<u64>> = vec![Vec::new(); d];
        let mut col_touched: Vec<Vec<u32>> = vec![Vec::new(); d];
        for (i, &vi) in v.coords.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, coords) in &self.adj[i] {
                let j = *j as usize;
                if cols[j].is_empty() {
                    cols[j] = vec![0; d];
                }
                for &(l, c) in coords {
                    if cols[j][l as usize] == 0 {
                        col_touched[j].push(l);
                    }
                    cols[j][l as usize] = f.mul_add(cols[j][l as usize], vi, c);
                }
            }
        }
        let mut triples = Vec::new();
        for (j, col) in cols.iter().enumerate() {
            if col.is_empty() {
                continue;
            }
            for &l in &col_touched[j] {
                let val = col[l as usize];
                if val != 0 {
                    triples.push((l, j as u32, val));
                }
            }
        }
        SparseMatrix::new(f, d, d, triples)
    }

    /// Dense column-major matrix of ad(v) (entry (row l, col j) at j*d + l).
    pub(crate) fn ad_dense(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let d = self.dim;
        let mut mat = vec![0u64; d * d];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, coords) in &self.adj[i] {
                let base = (*j as usize) * d;
                for &(l, c) in coords {
                    let slot = &mut mat[base + l as usize];
                    *slot = f.mul_add(*slot, vi, c);
                }
            }
        }
        mat
    }

    /// mat += alpha * ad(x_j) for a dense column-major matrix.
    pub(crate) fn add_scaled_ad_of_basis(&self, j: usize, alpha: u64, mat: &mut [u64]) {
        if alpha == 0 {
            return;
        }
        let f = self.field;
        let d = self.dim;
        for (jj, coords) in &self.adj[j] {
            let base = (*jj as usize) * d;
            for &(l, c) in coords {
                let slot = &mut mat[base + l as usize];
                *slot = f.mul_add(*slot, alpha, c);
            }
        }
    }

    /// acc += M v for a dense column-major matrix.
    pub(crate) fn matvec_dense(&self, mat: &[u64], v: &[u64], acc: &mut [u64]) {
        let f = self.field;
        let d = self.dim;
        let chunk = f.accum_chunk();
        // Accumulate raw products column-blockwise, reducing per block.
        let mut block_start = 0;
        while block_start < d {
            let block_end = (block_start + chunk).min(d);
            for l in 0..d {
                let mut raw = 0u64;
                for j in block_start..block_end {
                    let vj = v[j];
                    if vj != 0 {
                        raw += vj * mat[j * d + l];
                    }
                }
                acc[l] = f.add(acc[l], raw % f.p());
            }
            block_start = block_end;
        }
    }

    /// k-fold left-nested bracket [[..[g, h], h..], h].
    pub fn iterated_bracket(
        &self,
        g: &ElementVector,
        h: &ElementVector,
        k: usize,
    ) -> Result<ElementVector> {
        self.check_dim(g)?;
        self.check_dim(h)?;
        let mut w = g.clone();
        for _ in 0..k {
            let mut acc = vec![0u64; self.dim];
            self.bracket_eval_into(&w.coords, &h.coords, &mut acc);
            w = ElementVector { coords: acc };
        }
        Ok(w)
    }

    /// The Jacobson terms s_1..s_{p-1}: i*s_i is the coefficient of
    /// t^{i-1} in (ad(t x + y))^{p-1}(x).
    pub fn jacobson_terms(
        &self,
        x: &ElementVector,
        y: &ElementVector,
    ) -> Result<Vec<ElementVector>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let ad_x = self.ad_dense(&x.coords);
        let ad_y = self.ad_dense(&y.coords);
        let p = self.field.p() as usize;
        let coeffs = self.jacobson_poly(
            &x.coords,
            p - 1,
            |cur, acc| self.matvec_dense(&ad_x, cur, acc),
            |cur, acc| self.matvec_dense(&ad_y, cur, acc),
        );
        self.divide_jacobson_coeffs(&coeffs)
            .map(|vs| vs.into_iter().map(ElementVector::from_coords).collect())
    }

    /// Applies ad(t x + y) to x `apps` times, returning the coefficients
    /// of t^0..t^{p-2}. `apply_x` and `apply_y` must accumulate [x, cur]
    /// and [y, cur] respectively.
    pub(crate) fn jacobson_poly(
        &self,
        x: &[u64],
        apps: usize,
        apply_x: impl Fn(&[u64], &mut [u64]),
        apply_y: impl Fn(&[u64], &mut [u64]),
    ) -> Vec<Vec<u64>> {
        let p = self.field.p() as usize;
        let d = self.dim;
        let slots = p - 1; // degrees 0..p-2
        let mut cur: Vec<Vec<u64>> = vec![vec![0u64; d]; slots];
        cur[0].copy_from_slice(x);
        let mut next: Vec<Vec<u64>> = vec![vec![0u64; d]; slots];
        for _app in 0..apps {
            for buf in next.iter_mut() {
                buf.iter_mut().for_each(|c| *c = 0);
            }
            for deg in 0..slots {
                if cur[deg].iter().all(|&c| c == 0) {
                    continue;
                }
                // t * [x, cur] raises the degree by one; the t^{p-1}
                // coefficient is the pure (ad x)^k(x) path, which vanishes.
                apply_y(&cur[deg], &mut next[deg]);
                if deg + 1 < slots {
                    let (lo, hi) = next.split_at_mut(deg + 1);
                    let _ = lo;
                    apply_x(&cur[deg], &mut hi[0]);
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        cur
    }

    fn divide_jacobson_coeffs(&self, coeffs: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let f = self.field;
        let p = f.p() as usize;
        let mut out = Vec::with_capacity(p - 1);
        for i in 1..p {
            let inv_i = f.inv(i as u64)?;
            let v = coeffs[i - 1].iter().map(|&c| f.mul(c, inv_i)).collect();
            out.push(v);
        }
        Ok(out)
    }

    /// p-th power of an arbitrary element, derived from the basis [p]-map
    /// by folding the support in ascending basis order with Jacobson's
    /// formula.
    pub fn p_power_eval(&self, v: &ElementVector) -> Result<ElementVector> {
        self.check_dim(v)?;
        Ok(ElementVector {
            coords: self.p_power_fold(&v.coords),
        })
    }

    pub(crate) fn p_power_fold(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let p = f.p();
        let d = self.dim;
        let mut result = vec![0u64; d];
        let mut partial = vec![0u64; d];
        let mut ad_partial: Option<Vec<u64>> = None;
        let mut seen_any = false;
        for (j, &alpha) in v.iter().enumerate() {
            if alpha == 0 {
                continue;
            }
            if seen_any {
                let ad_p = ad_partial.get_or_insert_with(|| self.ad_dense(&partial));
                // sum of s_i(partial, alpha x_j)
                let coeffs = self.jacobson_poly(
                    &partial,
                    (p - 1) as usize,
                    |cur, acc| self.matvec_dense(ad_p, cur, acc),
                    |cur, acc| self.add_bracket_basis_vec(j, cur, alpha, acc),
                );
                let terms = self
                    .divide_jacobson_coeffs(&coeffs)
                    .expect("1..p-1 are invertible");
                for t in terms {
                    for (slot, c) in result.iter_mut().zip(t) {
                        *slot = f.add(*slot, c);
                    }
                }
            }
            // (alpha x_j)^{[p]} = alpha^p x_j^{[p]}
            let ap = f.pow(alpha, p);
            add_scaled_sparse(f, &mut result, ap, &self.pmap[j]);
            partial[j] = f.add(partial[j], alpha);
            if let Some(mat) = ad_partial.as_mut() {
                self.add_scaled_ad_of_basis(j, alpha, mat);
            }
            seen_any = true;
        }
        result
    }

    /// Verifies the Jacobi identity over all basis triples; returns the
    /// first violation in lexicographic order, if any.
    pub fn jacobi_check(&self) -> std::result::Result<(), JacobiViolation> {
        let d = self.dim;
        // Bitmap of nonzero bracket pairs lets the triple loop skip fast.
        let mut nonzero = vec![false; d * d];
        for (i, row) in self.adj.iter().enumerate() {
            for (j, _) in row {
                nonzero[i * d + *j as usize] = true;
            }
        }
        let check_i = |i: usize| -> Option<JacobiViolation> {
            let f = self.field;
            let mut acc = vec![0u64; d];
            for j in (i + 1)..d {
                let ij = nonzero[i * d + j];
                for k in (j + 1)..d {
                    if !ij && !nonzero[i * d + k] && !nonzero[j * d + k] {
                        continue;
                    }
                    acc.iter_mut().for_each(|c| *c = 0);
                    // [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]
                    for &(l, c) in self.bracket_basis(i, j) {
                        if (l as usize) != k {
                            let coords = self.bracket_basis(l as usize, k);
                            add_scaled_sparse(f, &mut acc, c, coords);
                        }
                    }
                    for &(l, c) in self.bracket_basis(j, k) {
                        if (l as usize) != i {
                            let coords = self.bracket_basis(l as usize, i);
                            add_scaled_sparse(f, &mut acc, c, coords);
                        }
                    }
                    for &(l, c) in self.bracket_basis(k, i) {
                        if (l as usize) != j {
                            let coords = self.bracket_basis(l as usize, j);
                            add_scaled_sparse(f, &mut acc, c, coords);
                        }
                    }
                    if acc.iter().any(|&c| c != 0) {
                        return Some(JacobiViolation {
                            i,
                            j,
                            k,
                            residual: acc.clone(),
                        });
                    }
                }
            }
            None
        };
        match (0..d).into_par_iter().find_map_first(check_i) {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    /// Verifies the restricted-structure axioms: (a) ad(x_i^{[p]}) =
    /// (ad x_i)^p on every basis vector, (b) Jacobson additivity on
    /// sampled pairs, (c) p-semilinearity on sampled scalar multiples.
    pub fn restrictedness_check(&self, samples: usize, seed: u64) -> RestrictednessReport {
        use rand::SeedableRng;
        let f = self.field;
        let p = f.p();
        let d = self.dim;
        let mut failures = Vec::new();

        // (a) per basis vector, in parallel.
        let bad: Vec<usize> = (0..d)
            .into_par_iter()
            .filter(|&i| {
                let mut buf = vec![0u64; d];
                let mut next = vec![0u64; d];
                for j in 0..d {
                    // (ad x_i)^p applied to x_j
                    buf.iter_mut().for_each(|c| *c = 0);
                    buf[j] = 1;
                    for _ in 0..p {
                        next.iter_mut().for_each(|c| *c = 0);
                        self.add_bracket_basis_vec(i, &buf, 1, &mut next);
                        std::mem::swap(&mut buf, &mut next);
                    }
                    // ad(x_i^{[p]}) applied to x_j
                    next.iter_mut().for_each(|c| *c = 0);
                    for &(l, c) in &self.pmap[i] {
                        if (l as usize) != j {
                            let coords = self.bracket_basis(l as usize, j);
                            add_scaled_sparse(f, &mut next, c, coords);
                        }
                    }
                    if buf != next {
                        return true;
                    }
                }
                false
            })
            .collect();
        for i in bad {
            failures.push(RestrictednessFailure::AdPower { basis_index: i });
        }

        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for s in 0..samples {
            let u = ElementVector::random(&mut rng, f, d);
            let w = ElementVector::random(&mut rng, f, d);
            let lhs = self.p_power_fold(&u.add(f, &w).coords);
            let mut rhs = self.p_power_fold(&u.coords);
            let pw = self.p_power_fold(&w.coords);
            for (slot, c) in rhs.iter_mut().zip(pw) {
                *slot = f.add(*slot, c);
            }
            let terms = self.jacobson_terms(&u, &w).expect("dims match");
            for t in terms {
                for (slot, c) in rhs.iter_mut().zip(t.coords) {
                    *slot = f.add(*slot, c);
                }
            }
            if lhs != rhs {
                failures.push(RestrictednessFailure::Additivity { sample: s });
            }
        }

        for s in 0..samples.min(8) {
            let alpha = rng.random_range(1..p);
            let v = ElementVector::random(&mut rng, f, d);
            let av = v.scale(f, alpha);
            let pow = self.p_power_fold(&av.coords);
            // (ad(av))^p column by column versus ad of the computed power.
            let mut ok = true;
            let ad_av = self.ad_dense(&av.coords);
            let ad_pow = self.ad_dense(&pow);
            let mut buf = vec![0u64; d];
            let mut next = vec![0u64; d];
            for j in 0..d {
                buf.iter_mut().for_each(|c| *c = 0);
                buf[j] = 1;
                for _ in 0..p {
                    next.iter_mut().for_each(|c| *c = 0);
                    self.matvec_dense(&ad_av, &buf, &mut next);
                    std::mem::swap(&mut buf, &mut next);
                }
                next.iter_mut().for_each(|c| *c = 0);
                self.matvec_dense(&ad_pow, &ElementVector::basis(d, j).coords, &mut next);
                if buf != next {
                    ok = false;
                    break;
                }
            }
            if !ok {
                failures.push(RestrictednessFailure::Semilinearity { sample: s });
            }
        }

        RestrictednessReport {
            seed,
            samples,
            failures,
        }
    }

    /// Echelonized basis of the span of all brackets of subspace basis
    /// vectors. Errors if the subspace is not closed under the bracket.
    pub fn derived_subalgebra(&self, subspace: &[ElementVector]) -> Result<Vec<ElementVector>> {
        for v in subspace {
            self.check_dim(v)?;
        }
        let mut span = RowReducer::new(self.field, self.dim);
        for v in subspace {
            span.push_row(&v.to_sparse());
        }
        let mut derived = RowReducer::new(self.field, self.dim);
        let mut acc = vec![0u64; self.dim];
        for (a, u) in subspace.iter().enumerate() {
            for (b, w) in subspace.iter().enumerate().skip(a + 1) {
                acc.iter_mut().for_each(|c| *c = 0);
                self.bracket_eval_into(&u.coords, &w.coords, &mut acc);
                if acc.iter().all(|&c| c == 0) {
                    continue;
                }
                if span.reduce_dense(&acc).iter().any(|&c| c != 0) {
                    return Err(Error::NotClosed { i: a, j: b });
                }
                let sparse: SparseVec = acc
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(l, &c)| (l as u32, c))
                    .collect();
                derived.push_row(&sparse);
            }
        }
        Ok(derived
            .dense_rows()
            .into_iter()
            .map(ElementVector::from_coords)
            .collect())
    }

    /// Rank of the span of all basis brackets ([g, g] = g iff this is dim).
    pub fn bracket_span_rank(&self) -> usize {
        let mut red = RowReducer::new(self.field, self.dim);
        for (_, _, coords) in self.bracket_pairs() {
            red.push_row(coords);
        }
        red.rank()
    }

    /// Dimension of the smallest subspace containing `v` and closed under
    /// bracketing with every basis vector.
    fn ideal_closure_rank(&self, v: &[u64]) -> usize {
        let f = self.field;
        let d = self.dim;
        let mut red = RowReducer::new(f, d);
        let sparse: SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(l, &c)| (l as u32, c))
            .collect();
        red.push_row(&sparse);
        let mut queue: Vec<Vec<u64>> = vec![v.to_vec()];
        let mut acc = vec![0u64; d];
        while let Some(u) = queue.pop() {
            if red.rank() == d {
                break;
            }
            for j in 0..d {
                // [u, x_j] = -[x_j, u]
                acc.iter_mut().for_each(|c| *c = 0);
                self.add_bracket_basis_vec(j, &u, f.p() - 1, &mut acc);
                let sparse: SparseVec = acc
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(l, &c)| (l as u32, c))
                    .collect();
                if sparse.is_empty() {
                    continue;
                }
                if red.push_row(&sparse) {
                    queue.push(acc.clone());
                    if red.rank() == d {
                        break;
                    }
                }
            }
        }
        red.rank()
    }

    /// Randomized simplicity test: [g, g] must equal g, the ideal
    /// generated by every basis vector must be the whole algebra (this
    /// catches direct sums in their natural bases), and likewise for
    /// `trials` random nonzero elements.
    pub fn simplicity_check(&self, trials: usize, seed: u64) -> SimplicityReport {
        use rand::SeedableRng;
        let f = self.field;
        let d = self.dim;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        if self.bracket_span_rank() != d {
            return SimplicityReport {
                outcome: SimplicityOutcome::Inconclusive {
                    trial: 0,
                    ideal_dim: self.bracket_span_rank(),
                },
                trials,
                seed,
            };
        }
        for i in 0..d {
            let rank = self.ideal_closure_rank(&ElementVector::basis(d, i).coords);
            if rank != d {
                return SimplicityReport {
                    outcome: SimplicityOutcome::Inconclusive {
                        trial: i,
                        ideal_dim: rank,
                    },
                    trials,
                    seed,
                };
            }
        }
        for trial in 0..trials {
            let mut v = ElementVector::random(&mut rng, f, d);
            while v.is_zero() {
                v = ElementVector::random(&mut rng, f, d);
            }
            let rank = self.ideal_closure_rank(&v.coords);
            if rank != d {
                return SimplicityReport {
                    outcome: SimplicityOutcome::Inconclusive {
                        trial,
                        ideal_dim: rank,
                    },
                    trials,
                    seed,
                };
            }
        }
        SimplicityReport {
            outcome: SimplicityOutcome::Simple,
            trials,
            seed,
        }
    }

    /// Structure-constant equality ignoring labels.
    pub fn structure_eq(&self, other: &AlgebraDescription) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.adj == other.adj
            && self.pmap == other.pmap
    }

    fn check_dim(&self, v: &ElementVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        Ok(())
    }
}

fn normalize_sparse(field: FieldSpec, dim: usize, mut sv: SparseVec) -> Result<SparseVec> {
    for (l, c) in sv.iter_mut() {
        if *l as usize >= dim {
            return Err(Error::IndexOutOfRange {
                index: *l as usize,
                dim,
            });
        }
        *c = field.reduce(*c);
    }
    sv.sort_unstable_by_key(|&(l, _)| l);
    let mut out: SparseVec = Vec::with_capacity(sv.len());
    for (l, c) in sv {
        match out.last_mut() {
            Some(last) if last.0 == l => last.1 = field.add(last.1, c),
            _ => out.push((l, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    Ok(out)
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// W(1) over GF(p) written out by hand from the closed bracket and
    /// [p]-map formulas, independent of the generic constructors. Basis
    /// index i corresponds to e_{i-1}.
    pub fn witt1_by_hand(p: u64) -> AlgebraDescription {
        let field = FieldSpec::new(p).unwrap();
        let d = p as usize;
        let mut brackets = Vec::new();
        let deg = |i: usize| i as i64 - 1; // e_j with j = i - 1
        for i in 0..d {
            for j in (i + 1)..d {
                let a = deg(i);
                let b = deg(j);
                let target = a + b;
                if target < -1 || target > p as i64 - 2 {
                    continue;
                }
                let coeff = field.reduce_signed(b - a);
                if coeff == 0 {
                    continue;
                }
                let t = (target + 1) as u32;
                brackets.push(((i, j), vec![(t, coeff)]));
            }
        }
        // e_0^{[p]} = e_0 (basis index 1), all other powers vanish.
        let pmap = vec![(1usize, vec![(1u32, 1u64)])];
        let labels = (0..d).map(|i| format!("e_{}", deg(i))).collect();
        AlgebraDescription::new(field, d, Some(labels), brackets, pmap).unwrap()
    }
}
