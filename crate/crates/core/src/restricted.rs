//! The restricted cohomology layer: Frobenius cochains, star-extension of
//! omega from a cocycle phi, restricted cocycle verification, restricted
//! coboundaries, and a basis of H^2_* realizing the direct sum with the
//! Frobenius homomorphisms.
//!
//! The *-property is realized operationally: the additivity defect of
//! omega equals the central Jacobson defect of the provisional extension
//! whose bracket is twisted by phi. Folding an element's support with that
//! defect rule extends omega from its basis values to the whole algebra,
//! and the fold is order-independent exactly when phi is a cocycle.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::algebra::{AlgebraDescription, ElementVector};
use crate::cohomology::{
    delta1_matrix, delta_map, h2_basis, is_cocycle, pair_count, OneCochain, TwoCochain,
};
use crate::error::{Error, Result};
use crate::linalg::RowReducer;

/// A map omega: g -> F with the *-property relative to its partner
/// two-cochain. Values on basis vectors are stored; all other values come
/// from the star fold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCochain {
    pub base_values: Vec<u64>,
    pub partner: TwoCochain,
}

impl FrobeniusCochain {
    /// omega(v), folding the support in ascending basis order.
    pub fn evaluate(&self, alg: &AlgebraDescription, v: &ElementVector) -> Result<u64> {
        let order: Vec<usize> = (0..alg.dim()).collect();
        self.evaluate_in_order(alg, v, &order)
    }

    /// omega(v) folded in the given basis order. Order independence holds
    /// when the partner is a cocycle and is exercised by the test suite.
    pub fn evaluate_in_order(
        &self,
        alg: &AlgebraDescription,
        v: &ElementVector,
        order: &[usize],
    ) -> Result<u64> {
        if v.dim() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                got: v.dim(),
            });
        }
        let f = alg.field();
        let p = f.p();
        let d = alg.dim();
        let phi_is_zero = self.partner.is_zero();
        let mut omega = 0u64;
        let mut partial: Vec<u64> = vec![0; d];
        let mut ad_partial: Option<Vec<u64>> = None;
        let mut phi_partial: Vec<u64> = vec![0; d];
        let mut seen_any = false;
        for &j in order {
            let alpha = v.coords[j];
            if alpha == 0 {
                continue;
            }
            if seen_any && !phi_is_zero {
                let ad_p = ad_partial.get_or_insert_with(|| alg.ad_dense(&partial));
                omega = f.add(
                    omega,
                    self.defect_against_basis(alg, &partial, ad_p, &phi_partial, j, alpha),
                );
            }
            omega = f.add(omega, f.mul(f.pow(alpha, p), self.base_values[j]));
            partial[j] = f.add(partial[j], alpha);
            if let Some(mat) = ad_partial.as_mut() {
                alg.add_scaled_ad_of_basis(j, alpha, mat);
            }
            if !phi_is_zero {
                // phi(partial + a x_j, .) = phi(partial, .) + a phi(x_j, .)
                self.partner
                    .add_scaled_basis_row(alg, j, alpha, &mut phi_partial);
            }
            seen_any = true;
        }
        Ok(omega)
    }

    /// star_defect(phi, u, a x_j) with the ad matrix and left contraction
    /// of u already at hand.
    fn defect_against_basis(
        &self,
        alg: &AlgebraDescription,
        u: &[u64],
        ad_u: &[u64],
        phi_u: &[u64],
        j: usize,
        alpha: u64,
    ) -> u64 {
        let f = alg.field();
        let p = f.p() as usize;
        let d = alg.dim();
        let g = alg.jacobson_poly(
            u,
            p - 2,
            |cur, acc| alg.matvec_dense(ad_u, cur, acc),
            |cur, acc| alg.add_bracket_basis_vec(j, cur, alpha, acc),
        );
        let mut phi_w = vec![0u64; d];
        self.partner.add_scaled_basis_row(alg, j, alpha, &mut phi_w);
        let mut defect = 0u64;
        for i in 1..p {
            let mut c = f.dot(&phi_w, &g[i - 1]);
            if i >= 2 {
                c = f.add(c, f.dot(phi_u, &g[i - 2]));
            }
            let inv_i = f.inv(i as u64).expect("i < p");
            defect = f.add(defect, f.mul(inv_i, c));
        }
        defect
    }
}

/// The pair (phi, omega) of the restricted complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedTwoCochain {
    pub phi: TwoCochain,
    pub omega: FrobeniusCochain,
}

impl RestrictedTwoCochain {
    /// The evaluation vector (phi on all basis pairs, omega on all basis
    /// vectors) that determines the cochain.
    pub fn eval_vector(&self) -> Vec<u64> {
        let mut v = self.phi.values.clone();
        v.extend_from_slice(&self.omega.base_values);
        v
    }
}

/// The additivity defect of the star fold: the central coordinate of the
/// Jacobson sum in the provisional extension with bracket twisted by phi.
pub fn star_defect(
    alg: &AlgebraDescription,
    phi: &TwoCochain,
    u: &ElementVector,
    w: &ElementVector,
) -> Result<u64> {
    if u.dim() != alg.dim() || w.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: u.dim().min(w.dim()),
        });
    }
    let f = alg.field();
    let p = f.p() as usize;
    if phi.is_zero() {
        return Ok(0);
    }
    let ad_u = alg.ad_dense(&u.coords);
    let ad_w = alg.ad_dense(&w.coords);
    let g = alg.jacobson_poly(
        &u.coords,
        p - 2,
        |cur, acc| alg.matvec_dense(&ad_u, cur, acc),
        |cur, acc| alg.matvec_dense(&ad_w, cur, acc),
    );
    let phi_u = phi.left_contraction(alg, &u.coords);
    let phi_w = phi.left_contraction(alg, &w.coords);
    let mut defect = 0u64;
    for i in 1..p {
        let mut c = f.dot(&phi_w, &g[i - 1]);
        if i >= 2 {
            c = f.add(c, f.dot(&phi_u, &g[i - 2]));
        }
        let inv_i = f.inv(i as u64).expect("i < p");
        defect = f.add(defect, f.mul(inv_i, c));
    }
    Ok(defect)
}

/// Extends base values to a Frobenius cochain with the *-property
/// relative to phi. Refuses non-cocycles: order independence of the fold
/// is only guaranteed then.
pub fn star_extend(
    alg: &AlgebraDescription,
    phi: &TwoCochain,
    base_values: Vec<u64>,
) -> Result<FrobeniusCochain> {
    if base_values.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: base_values.len(),
        });
    }
    if !is_cocycle(alg, phi)? {
        return Err(Error::NotCocycle);
    }
    Ok(FrobeniusCochain {
        base_values,
        partner: phi.clone(),
    })
}

/// The d restricted cocycles (0, omega_i) with omega_i extracting the
/// i-th coordinate raised to p.
pub fn frobenius_basis(alg: &AlgebraDescription) -> Vec<RestrictedTwoCochain> {
    let d = alg.dim();
    (0..d)
        .map(|i| {
            let mut base = vec![0u64; d];
            base[i] = 1;
            RestrictedTwoCochain {
                phi: TwoCochain::zero(d),
                omega: FrobeniusCochain {
                    base_values: base,
                    partner: TwoCochain::zero(d),
                },
            }
        })
        .collect()
}

/// Reasons a restricted-cocycle check can fail.
#[derive(Clone, Debug)]
pub enum RestrictedCocycleFailure {
    NotCocycle,
    DeltaMapNonzero { g: usize, h: usize },
    DeltaMapNonzeroSample { sample: usize },
    StarAdditivity { sample: usize },
    StarSemilinearity { sample: usize },
}

impl fmt::Display for RestrictedCocycleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictedCocycleFailure::NotCocycle => write!(f, "phi is not a cocycle"),
            RestrictedCocycleFailure::DeltaMapNonzero { g, h } => {
                write!(f, "Delta map nonzero on basis pair ({g}, {h})")
            }
            RestrictedCocycleFailure::DeltaMapNonzeroSample { sample } => {
                write!(f, "Delta map nonzero on random sample {sample}")
            }
            RestrictedCocycleFailure::StarAdditivity { sample } => {
                write!(f, "*-property additivity fails on sample {sample}")
            }
            RestrictedCocycleFailure::StarSemilinearity { sample } => {
                write!(f, "omega(a v) != a^p omega(v) on sample {sample}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct RestrictedCocycleReport {
    pub seed: u64,
    pub samples: usize,
    pub failures: Vec<RestrictedCocycleFailure>,
}

impl RestrictedCocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RestrictedCocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "restricted cocycle: pass ({} samples, seed {})",
                self.samples, self.seed
            )
        } else {
            writeln!(
                f,
                "restricted cocycle: FAIL ({} samples, seed {})",
                self.samples, self.seed
            )?;
            for fail in &self.failures {
                writeln!(f, "  {fail}")?;
            }
            Ok(())
        }
    }
}

/// Verifies that (phi, omega) is a restricted cocycle: phi closed, the
/// Delta map vanishing on basis and sampled pairs, and omega satisfying
/// the *-property on samples.
pub fn restricted_cocycle_check(
    alg: &AlgebraDescription,
    rc: &RestrictedTwoCochain,
    samples: usize,
    seed: u64,
) -> Result<RestrictedCocycleReport> {
    use rand::SeedableRng;
    let f = alg.field();
    let d = alg.dim();
    let mut failures = Vec::new();
    let phi_ok = is_cocycle(alg, &rc.phi)?;
    if !phi_ok {
        failures.push(RestrictedCocycleFailure::NotCocycle);
    }
    if phi_ok && !rc.phi.is_zero() {
        'outer: for g in 0..d {
            for h in 0..d {
                if delta_map_basis(alg, &rc.phi, g, h)? != 0 {
                    failures.push(RestrictedCocycleFailure::DeltaMapNonzero { g, h });
                    break 'outer;
                }
            }
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for s in 0..samples {
        let g = ElementVector::random(&mut rng, f, d);
        let h = ElementVector::random(&mut rng, f, d);
        if phi_ok && !rc.phi.is_zero() && delta_map(alg, &rc.phi, &g, &h)? != 0 {
            failures.push(RestrictedCocycleFailure::DeltaMapNonzeroSample { sample: s });
        }
        if phi_ok {
            let lhs = rc.omega.evaluate(alg, &g.add(f, &h))?;
            let mut rhs = f.add(rc.omega.evaluate(alg, &g)?, rc.omega.evaluate(alg, &h)?);
            rhs = f.add(rhs, star_defect(alg, &rc.phi, &g, &h)?);
            if lhs != rhs {
                failures.push(RestrictedCocycleFailure::StarAdditivity { sample: s });
            }
            let lambda = rng.random_range(0..f.p());
            let lhs = rc.omega.evaluate(alg, &g.scale(f, lambda))?;
            let rhs = f.mul(f.pow(lambda, f.p()), rc.omega.evaluate(alg, &g)?);
            if lhs != rhs {
                failures.push(RestrictedCocycleFailure::StarSemilinearity { sample: s });
            }
        }
    }
    Ok(RestrictedCocycleReport {
        seed,
        samples,
        failures,
    })
}

/// Delta map on a basis pair, using the stored [p]-map directly.
pub(crate) fn delta_map_basis(
    alg: &AlgebraDescription,
    phi: &TwoCochain,
    g: usize,
    h: usize,
) -> Result<u64> {
    let f = alg.field();
    let d = alg.dim();
    let mut hp = ElementVector::zero(d);
    for &(l, c) in alg.p_power_basis(h) {
        hp.coords[l as usize] = c;
    }
    let gv = ElementVector::basis(d, g);
    let first = phi.eval(alg, &gv, &hp);
    let hv = ElementVector::basis(d, h);
    let nested = alg.iterated_bracket(&gv, &hv, (f.p() - 1) as usize)?;
    let second = phi.eval(alg, &nested, &hv);
    Ok(f.sub(first, second))
}

/// The restricted coboundary of a one-cochain: (delta^1 psi, omega_psi)
/// with omega_psi(x_i) = psi(x_i^{[p]}), star-extended against delta^1 psi.
pub fn restricted_coboundary(
    alg: &AlgebraDescription,
    psi: &OneCochain,
) -> Result<RestrictedTwoCochain> {
    let f = alg.field();
    let d = alg.dim();
    if psi.values.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: psi.values.len(),
        });
    }
    let phi_values = delta1_matrix(alg).mul_vec(&psi.values)?;
    let phi = TwoCochain::from_values(d, phi_values)?;
    let mut base = vec![0u64; d];
    for (i, slot) in base.iter_mut().enumerate() {
        let mut acc = 0u64;
        for &(l, c) in alg.p_power_basis(i) {
            acc = f.mul_add(acc, c, psi.values[l as usize]);
        }
        *slot = acc;
    }
    let omega = FrobeniusCochain {
        base_values: base,
        partner: phi.clone(),
    };
    Ok(RestrictedTwoCochain { phi, omega })
}

/// The assembled basis of H^2_*: d Frobenius pairs followed by one lifted
/// pair per canonical H^2 representative.
#[derive(Clone, Debug)]
pub struct RestrictedReport {
    pub h2star_dim: usize,
    pub basis: Vec<RestrictedTwoCochain>,
    /// The first `frobenius_count` entries of `basis` are the (0, omega_i).
    pub frobenius_count: usize,
    pub h2_dim: usize,
}

impl RestrictedReport {
    pub fn frobenius_part(&self) -> &[RestrictedTwoCochain] {
        &self.basis[..self.frobenius_count]
    }

    pub fn lifted_part(&self) -> &[RestrictedTwoCochain] {
        &self.basis[self.frobenius_count..]
    }
}

/// Computes a basis of H^2_*(g): the d Frobenius cocycles plus one lift
/// per H^2 representative (omega zero on basis vectors). Every element is
/// verified as a restricted cocycle and the whole set is checked for
/// independence modulo restricted coboundaries by a rank computation.
pub fn h2star_basis(
    alg: &AlgebraDescription,
    max_dim: usize,
    seed: u64,
) -> Result<RestrictedReport> {
    let d = alg.dim();
    let cohom = h2_basis(alg, max_dim)?;
    let mut basis = frobenius_basis(alg);
    for rep in &cohom.h2_reps {
        let omega = star_extend(alg, rep, vec![0; d])?;
        basis.push(RestrictedTwoCochain {
            phi: rep.clone(),
            omega,
        });
    }
    for (k, rc) in basis.iter().enumerate() {
        let report = restricted_cocycle_check(alg, rc, 4, seed.wrapping_add(k as u64))?;
        if !report.passed() {
            return Err(Error::ExtensionAxiom(format!(
                "basis element {k} failed the restricted cocycle check: {report}"
            )));
        }
    }
    // Independence modulo restricted coboundaries, on evaluation vectors.
    let cols = pair_count(d) + d;
    let mut red = RowReducer::new(alg.field(), cols);
    for i in 0..d {
        let psi = OneCochain::dual_basis(d, i);
        let cob = restricted_coboundary(alg, &psi)?;
        let v = cob.eval_vector();
        let sparse: Vec<(u32, u64)> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(c, &v)| (c as u32, v))
            .collect();
        red.push_row(&sparse);
    }
    let coboundary_rank = red.rank();
    for (k, rc) in basis.iter().enumerate() {
        let v = rc.eval_vector();
        let sparse: Vec<(u32, u64)> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(c, &v)| (c as u32, v))
            .collect();
        if !red.push_row(&sparse) {
            return Err(Error::ExtensionAxiom(format!(
                "basis element {k} is dependent modulo restricted coboundaries"
            )));
        }
    }
    debug_assert_eq!(red.rank(), coboundary_rank + basis.len());
    let h2star_dim = d + cohom.h2_dim;
    debug_assert_eq!(h2star_dim, basis.len());
    Ok(RestrictedReport {
        h2star_dim,
        basis,
        frobenius_count: d,
        h2_dim: cohom.h2_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_support::witt1_by_hand;
    use crate::cohomology::pair_index;

    #[test]
    fn frobenius_cochains_extract_coordinates() {
        let alg = witt1_by_hand(5);
        let frob = frobenius_basis(&alg);
        assert_eq!(frob.len(), 5);
        // omega_1(2 x_1 + x_2) = 2^5 = 2 over GF(5)
        let mut v = ElementVector::zero(5);
        v.coords[1] = 2;
        v.coords[2] = 1;
        assert_eq!(frob[1].omega.evaluate(&alg, &v).unwrap(), 2);
        assert_eq!(frob[2].omega.evaluate(&alg, &v).unwrap(), 1);
        assert_eq!(frob[0].omega.evaluate(&alg, &v).unwrap(), 0);
    }

    #[test]
    fn star_defect_vanishes_for_zero_phi_and_equal_args() {
        use rand::SeedableRng;
        let alg = witt1_by_hand(5);
        let f = alg.field();
        let zero = TwoCochain::zero(5);
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let report = h2_basis_rep(&alg);
        for _ in 0..10 {
            let u = ElementVector::random(&mut rng, f, 5);
            let w = ElementVector::random(&mut rng, f, 5);
            assert_eq!(star_defect(&alg, &zero, &u, &w).unwrap(), 0);
            assert_eq!(star_defect(&alg, &report, &u, &u).unwrap(), 0);
        }
    }

    fn h2_basis_rep(alg: &AlgebraDescription) -> TwoCochain {
        h2_basis(alg, 300).unwrap().h2_reps.remove(0)
    }

    #[test]
    fn star_extension_is_order_independent_for_cocycles() {
        use rand::SeedableRng;
        let alg = witt1_by_hand(5);
        let f = alg.field();
        let rep = h2_basis_rep(&alg);
        let omega = star_extend(&alg, &rep, vec![0; 5]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let descending: Vec<usize> = (0..5).rev().collect();
        for _ in 0..50 {
            let v = ElementVector::random(&mut rng, f, 5);
            let a = omega.evaluate(&alg, &v).unwrap();
            let b = omega.evaluate_in_order(&alg, &v, &descending).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn star_additivity_matches_defect() {
        use rand::SeedableRng;
        let alg = witt1_by_hand(5);
        let f = alg.field();
        let rep = h2_basis_rep(&alg);
        let omega = star_extend(&alg, &rep, vec![0; 5]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..25 {
            let u = ElementVector::random(&mut rng, f, 5);
            let w = ElementVector::random(&mut rng, f, 5);
            let lhs = omega.evaluate(&alg, &u.add(f, &w)).unwrap();
            let rhs = f.add(
                f.add(
                    omega.evaluate(&alg, &u).unwrap(),
                    omega.evaluate(&alg, &w).unwrap(),
                ),
                star_defect(&alg, &rep, &u, &w).unwrap(),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn star_extend_refuses_non_cocycles() {
        let alg = witt1_by_hand(5);
        let mut phi = TwoCochain::zero(5);
        phi.values[pair_index(5, 1, 2)] = 1;
        assert!(matches!(
            star_extend(&alg, &phi, vec![0; 5]),
            Err(Error::NotCocycle)
        ));
    }

    #[test]
    fn frobenius_pairs_pass_restricted_check() {
        let alg = witt1_by_hand(5);
        for rc in frobenius_basis(&alg) {
            let report = restricted_cocycle_check(&alg, &rc, 5, 7).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn non_cocycle_pair_fails_check() {
        let alg = witt1_by_hand(5);
        let mut phi = TwoCochain::zero(5);
        phi.values[pair_index(5, 1, 2)] = 1;
        let rc = RestrictedTwoCochain {
            phi: phi.clone(),
            omega: FrobeniusCochain {
                base_values: vec![0; 5],
                partner: phi,
            },
        };
        let report = restricted_cocycle_check(&alg, &rc, 3, 8).unwrap();
        assert!(!report.passed());
        assert!(matches!(
            report.failures[0],
            RestrictedCocycleFailure::NotCocycle
        ));
    }

    #[test]
    fn restricted_coboundary_of_zero_is_zero() {
        let alg = witt1_by_hand(5);
        let rc = restricted_coboundary(&alg, &OneCochain::zero(5)).unwrap();
        assert!(rc.phi.is_zero());
        assert!(rc.omega.base_values.iter().all(|&c| c == 0));
    }

    #[test]
    fn restricted_coboundary_of_e0_dual() {
        // psi = dual of e_0: phi(e_j, e_k) = psi([e_j, e_k]) hits pairs with
        // j + k = 0; omega(e_j) = psi(delta_{0,j} e_0) = delta_{0,j}.
        let alg = witt1_by_hand(5);
        let psi = OneCochain::dual_basis(5, 1);
        let rc = restricted_coboundary(&alg, &psi).unwrap();
        // [e_-1, e_1] = 2 e_0: pair (0, 2) carries 2.
        assert_eq!(rc.phi.values[pair_index(5, 0, 2)], 2);
        assert_eq!(rc.omega.base_values, vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn witt1_h2star_dimension() {
        for p in [5u64, 7] {
            let alg = witt1_by_hand(p);
            let report = h2star_basis(&alg, 300, 99).unwrap();
            assert_eq!(report.h2star_dim, p as usize + 1);
            assert_eq!(report.frobenius_part().len(), p as usize);
            assert_eq!(report.lifted_part().len(), 1);
        }
    }
}
