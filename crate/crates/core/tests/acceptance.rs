//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `--nocapture` to see them).
//!
//! Expected values are frozen from the closed dimension formulas and,
//! where marked, recomputed here through independent oracles (dense
//! Gauss-Jordan elimination; Jacobson terms evaluated in an explicitly
//! materialized extension).

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use modlie::algebra::{AlgebraDescription, ElementVector};
use modlie::cohomology::{
    delta1_matrix, delta2_matrix, h2_basis, is_coboundary, pair_count, CohomologyReport, TwoCochain,
};
use modlie::constructors::{
    construct_contact, construct_hamiltonian, construct_psl, construct_sl, construct_special,
    construct_witt,
};
use modlie::extensions::{frobenius_extension, verify_extension_axioms, witt1_extension};
use modlie::io::{parse_algebra, write_algebra};
use modlie::linalg::{reduce_mod_image, FieldSpec};
use modlie::report::{survey, SurveyOptions};
use modlie::restricted::{
    h2star_basis, restricted_cocycle_check, star_defect, RestrictedReport, RestrictedTwoCochain,
};

const SEED: u64 = 0x5eed_cafe;
const COHOMOLOGY_LIMIT: usize = 300;

struct Case {
    alg: AlgebraDescription,
    cohomology: CohomologyReport,
    restricted: RestrictedReport,
}

fn compute_case(alg: AlgebraDescription) -> Case {
    let cohomology = h2_basis(&alg, COHOMOLOGY_LIMIT).expect("within guard");
    let restricted = h2star_basis(&alg, COHOMOLOGY_LIMIT, SEED).expect("within guard");
    Case {
        alg,
        cohomology,
        restricted,
    }
}

macro_rules! cached_case {
    ($fn_name:ident, $build:expr) => {
        fn $fn_name() -> &'static Case {
            static CELL: OnceLock<Case> = OnceLock::new();
            CELL.get_or_init(|| compute_case($build))
        }
    };
}

cached_case!(w1_p5, construct_witt(1, 5, 2000).unwrap());
cached_case!(w1_p7, construct_witt(1, 7, 2000).unwrap());
cached_case!(sl2_p5, construct_sl(2, 5, 2000).unwrap());
cached_case!(sl3_p5, construct_sl(3, 5, 2000).unwrap());
cached_case!(sl4_p5, construct_sl(4, 5, 2000).unwrap());
cached_case!(psl5_p5, construct_psl(5, 5, 2000).unwrap());
cached_case!(w2_p5, construct_witt(2, 5, 2000).unwrap());
cached_case!(k3_p5, construct_contact(3, 5, 2000).unwrap());
cached_case!(h2_p5, construct_hamiltonian(2, 5, 2000).unwrap());
cached_case!(h2_p7, construct_hamiltonian(2, 7, 2000).unwrap());
cached_case!(s3_p5, construct_special(3, 5, 2000).unwrap());

/// Independent dense Gauss-Jordan elimination (the oracle path; kept
/// free of the sparse engine).
fn dense_rank(field: FieldSpec, rows: usize, cols: usize, entries: &[(u32, u32, u64)]) -> usize {
    let mut mat = vec![vec![0u64; cols]; rows];
    for &(r, c, v) in entries {
        mat[r as usize][c as usize] = v;
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(sel) = (rank..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, sel);
        let inv = field.inv(mat[rank][col]).unwrap();
        for c in 0..cols {
            mat[rank][c] = field.mul(mat[rank][c], inv);
        }
        for r in 0..rows {
            if r != rank && mat[r][col] != 0 {
                let coef = mat[r][col];
                for c in 0..cols {
                    let s = field.mul(coef, mat[rank][c]);
                    mat[r][c] = field.sub(mat[r][c], s);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[test]
fn criterion_01_witt1_h2_and_h2star() {
    for p in [5u64, 7] {
        let start = Instant::now();
        let alg = construct_witt(1, p, 2000).unwrap();
        let cohom = h2_basis(&alg, COHOMOLOGY_LIMIT).unwrap();
        let rest = h2star_basis(&alg, COHOMOLOGY_LIMIT, SEED).unwrap();
        let elapsed = start.elapsed();
        assert_eq!(cohom.h2_dim, 1, "dim H2(W(1)) at p = {p}");
        assert_eq!(rest.h2star_dim, p as usize + 1, "dim H2*(W(1)) at p = {p}");
        assert!(
            elapsed < Duration::from_secs(1),
            "W(1) at p = {p} took {elapsed:.2?} (budget 1 s)"
        );
    }
    println!("criterion 1: PASS (W(1): dim H2 = 1, dim H2* = p+1 at p = 5, 7; < 1 s each)");
}

#[test]
fn criterion_02_table1_rows_with_vanishing_h2() {
    // Fresh, timed runs: construction plus the full H2 and H2* pipeline.
    let rows: &[(&str, fn() -> AlgebraDescription, usize, u64)] = &[
        ("sl(2)", || construct_sl(2, 5, 2000).unwrap(), 3, 10),
        ("sl(3)", || construct_sl(3, 5, 2000).unwrap(), 8, 10),
        ("sl(4)", || construct_sl(4, 5, 2000).unwrap(), 15, 10),
        ("W(2)", || construct_witt(2, 5, 2000).unwrap(), 50, 10),
        ("K(3)", || construct_contact(3, 5, 2000).unwrap(), 125, 120),
    ];
    for &(name, build, dim, budget_s) in rows {
        let start = Instant::now();
        let alg = build();
        let cohom = h2_basis(&alg, COHOMOLOGY_LIMIT).unwrap();
        let rest = h2star_basis(&alg, COHOMOLOGY_LIMIT, SEED).unwrap();
        let elapsed = start.elapsed();
        assert_eq!(alg.dim(), dim, "{name} dimension");
        assert_eq!(cohom.h2_dim, 0, "dim H2({name}) at p = 5");
        assert_eq!(rest.h2star_dim, dim, "dim H2*({name}) at p = 5");
        assert!(
            elapsed < Duration::from_secs(budget_s),
            "{name} took {elapsed:.2?} (budget {budget_s} s)"
        );
    }
    println!(
        "criterion 2 (sl_2, sl_3, sl_4, W(2), K(3)): PASS (dim H2 = 0, dim H2* = dim g; within budgets)"
    );
}

#[test]
fn criterion_02_psl5_row_as_stated() {
    // Stated expectation (Table 1 via Block): dim H2(psl(5)) = 0 and
    // dim H2* = 23 at p = 5. The computation refutes the row: the
    // canonical elimination, an independent dense elimination, and the
    // explicit non-split central extension sl(5) -> psl(5) (sl(5) is
    // perfect with one-dimensional center, and its section cocycle is
    // verified to be a non-coboundary cocycle) all give dim H2 = 1,
    // hence dim H2* = 24. The assertions below state the criterion
    // verbatim and are expected to fail until the table row is
    // corrected; the computed values themselves are locked in
    // criterion_02_psl5_row_computed.
    let case = psl5_p5();
    assert_eq!(case.alg.dim(), 23, "psl(5) dimension");
    if case.cohomology.h2_dim != 0 || case.restricted.h2star_dim != 23 {
        println!(
            "criterion 2 (psl(5) row as stated): FAIL (computed dim H2 = {}, stated 0; \
             computed dim H2* = {}, stated 23)",
            case.cohomology.h2_dim, case.restricted.h2star_dim
        );
    }
    assert_eq!(
        case.cohomology.h2_dim, 0,
        "dim H2(psl(5)) as stated by the table; the measured value {} is backed by a dense \
         elimination oracle and by the explicit non-split extension sl(5) -> psl(5)",
        case.cohomology.h2_dim
    );
    assert_eq!(case.restricted.h2star_dim, 23, "dim H2*(psl(5)) as stated");
    println!("criterion 2 (psl(5) row): PASS");
}

#[test]
fn criterion_02_psl5_row_computed() {
    // The machine-verified values for the psl(5) row, cross-checked by
    // the dense oracle. The direct-sum identity of the Theorem holds.
    let case = psl5_p5();
    assert_eq!(case.alg.dim(), 23);
    assert_eq!(case.cohomology.h2_dim, 1);
    assert_eq!(case.restricted.h2star_dim, 24);
    let d1 = delta1_matrix(&case.alg);
    let d2 = delta2_matrix(&case.alg, 8_000_000).unwrap();
    let f = case.alg.field();
    let dense_r1 = dense_rank(f, d1.rows(), d1.cols(), d1.entries());
    let dense_r2 = dense_rank(f, d2.rows(), d2.cols(), d2.entries());
    let dense_h2 = (pair_count(23) - dense_r2) - dense_r1;
    assert_eq!(dense_h2, 1, "dense oracle agrees");
    println!(
        "criterion 2 (psl(5) computed): dim H2 = 1, dim H2* = 24, dense oracle agrees; \
         Table 1 row refuted"
    );
}

#[test]
fn criterion_03_hamiltonian_rows() {
    for p in [5u64, 7] {
        let start = Instant::now();
        let alg = construct_hamiltonian(2, p, 2000).unwrap();
        let cohom = h2_basis(&alg, COHOMOLOGY_LIMIT).unwrap();
        let rest = h2star_basis(&alg, COHOMOLOGY_LIMIT, SEED).unwrap();
        let elapsed = start.elapsed();
        let pn = (p * p) as usize;
        assert_eq!(alg.dim(), pn - 2, "H(2) dimension at p = {p}");
        assert_eq!(cohom.h2_dim, 3, "dim H2(H(2)) at p = {p}");
        assert_eq!(rest.h2star_dim, pn + 1, "dim H2*(H(2)) at p = {p}");
        assert!(
            elapsed < Duration::from_secs(10),
            "H(2) at p = {p} took {elapsed:.2?} (budget 10 s)"
        );
    }
    println!("criterion 3: PASS (H(2): dim H2 = 3; dim H2* = 26 at p = 5, 50 at p = 7; < 10 s)");
}

#[test]
fn criterion_04_special_s3_long_tier() {
    let start = Instant::now();
    let alg = construct_special(3, 5, 2000).unwrap();
    let cohom = h2_basis(&alg, COHOMOLOGY_LIMIT).unwrap();
    let rest = h2star_basis(&alg, COHOMOLOGY_LIMIT, SEED).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(alg.dim(), 248); // 2p^3 - 2
    assert_eq!(cohom.h2_dim, 3, "dim H2(S(3)) at p = 5");
    assert_eq!(rest.h2star_dim, 251, "dim H2*(S(3)) at p = 5");
    assert!(
        elapsed < Duration::from_secs(30 * 60),
        "S(3) took {elapsed:.2?} (budget 30 min)"
    );
    println!("criterion 4: PASS (S(3): dim H2 = 3, dim H2* = 251 in {elapsed:.2?})");
}

#[test]
fn criterion_05_formula_rows_and_constructive_theorem() {
    // The congruence rows beyond desk scale appear as formula rows.
    let text = survey(&SurveyOptions {
        p: 5,
        max_dim: 30,
        seed: SEED,
    })
    .unwrap();
    assert!(
        text.contains("H(6)") && text.contains("formula (n+4 = 0 mod 5)"),
        "H(n) congruence formula row missing:\n{text}"
    );
    assert!(
        text.contains("K(7)") && text.contains("formula (n+3 = 0 mod 5)"),
        "K(n) congruence formula row missing:\n{text}"
    );
    assert!(text.contains("15623"), "smallest H(6) dimension echoed");
    assert!(text.contains("78124"), "smallest K(7) dimension echoed");
    // The Theorem identity dim H2* = dim H2 + dim g, verified
    // constructively on every algebra of criteria 1-4.
    let cases: &[(&str, fn() -> &'static Case)] = &[
        ("W(1) p=5", w1_p5),
        ("W(1) p=7", w1_p7),
        ("sl(2)", sl2_p5),
        ("sl(3)", sl3_p5),
        ("sl(4)", sl4_p5),
        ("psl(5)", psl5_p5),
        ("W(2)", w2_p5),
        ("K(3)", k3_p5),
        ("H(2) p=5", h2_p5),
        ("H(2) p=7", h2_p7),
        ("S(3)", s3_p5),
    ];
    for (name, case_fn) in cases {
        let case = case_fn();
        assert_eq!(
            case.restricted.h2star_dim,
            case.alg.dim() + case.cohomology.h2_dim,
            "Theorem identity on {name}"
        );
    }
    println!(
        "criterion 5: PASS (formula rows printed; dim H2* = dim g + dim H2 on all criteria 1-4 algebras)"
    );
}

#[test]
fn criterion_06_constructive_basis_of_h2star() {
    let cases: &[(&str, fn() -> &'static Case)] = &[
        ("W(1) p=5", w1_p5),
        ("W(1) p=7", w1_p7),
        ("sl(2)", sl2_p5),
        ("sl(3)", sl3_p5),
        ("sl(4)", sl4_p5),
        ("psl(5)", psl5_p5),
        ("W(2)", w2_p5),
        ("K(3)", k3_p5),
        ("H(2) p=5", h2_p5),
        ("H(2) p=7", h2_p7),
    ];
    for (name, case_fn) in cases {
        let case = case_fn();
        // h2star_basis already verified every element and confirmed
        // independence modulo restricted coboundaries by rank; re-check
        // the count and spot-verify each element here.
        assert_eq!(
            case.restricted.basis.len(),
            case.alg.dim() + case.cohomology.h2_dim,
            "basis count on {name}"
        );
        assert_eq!(case.restricted.frobenius_part().len(), case.alg.dim());
        assert_eq!(case.restricted.lifted_part().len(), case.cohomology.h2_dim);
        for (k, rc) in case.restricted.basis.iter().enumerate() {
            let report = restricted_cocycle_check(&case.alg, rc, 2, SEED ^ k as u64).unwrap();
            assert!(report.passed(), "{name} basis element {k}: {report}");
        }
    }
    println!(
        "criterion 6: PASS (h2star_basis returns dim g + dim H2 verified restricted cocycles, independent modulo coboundaries)"
    );
}

#[test]
fn criterion_07_extension_axioms() {
    let sources: &[(&str, fn() -> &'static Case)] = &[
        ("W(1) p=5", w1_p5),
        ("W(1) p=7", w1_p7),
        ("sl(2)", sl2_p5),
        ("H(2) p=5", h2_p5),
    ];
    for (name, case_fn) in sources {
        let case = case_fn();
        for i in 0..case.alg.dim() {
            let ext = frobenius_extension(&case.alg, i)
                .unwrap_or_else(|e| panic!("E_{i} of {name}: {e}"));
            let report = verify_extension_axioms(&ext, 50, SEED ^ i as u64);
            assert!(report.passed(), "E_{i} of {name}:\n{report}");
        }
    }
    for p in [5u64, 7] {
        let ext = witt1_extension(p).unwrap();
        let report = verify_extension_axioms(&ext, 50, SEED);
        assert!(report.passed(), "witt1_extension({p}):\n{report}");
        let source = &ext.provenance.source;
        let phi = &ext.provenance.cocycle.phi;
        assert!(
            is_coboundary(source, phi).unwrap().is_none(),
            "witt1_extension({p}) phi part must not be a coboundary"
        );
        // The phi part agrees with the canonical lifted representative
        // up to a coboundary and scaling.
        let cohom = h2_basis(source, COHOMOLOGY_LIMIT).unwrap();
        assert_eq!(cohom.h2_dim, 1);
        let image = delta1_image_rows(source);
        let f = source.field();
        let reduced_formula = reduce_mod_image(f, &phi.values, &image).unwrap();
        let reduced_rep = reduce_mod_image(f, &cohom.h2_reps[0].values, &image).unwrap();
        let scale = scalar_ratio(f, &reduced_formula, &reduced_rep)
            .expect("classes are proportional modulo coboundaries");
        assert_ne!(scale, 0, "nontrivial class has a nonzero best-fit scale");
    }
    println!(
        "criterion 7: PASS (all corollary extensions and witt1_extension verified; witt1 phi nontrivial)"
    );
}

/// Echelonized image of delta^1 as dense rows (test-local helper built
/// from the public matrix surface only).
fn delta1_image_rows(alg: &AlgebraDescription) -> Vec<Vec<u64>> {
    let d1 = delta1_matrix(alg);
    let rows = pair_count(alg.dim());
    let f = alg.field();
    // columns of delta1 = images of the dual basis
    let mut dense: Vec<Vec<u64>> = Vec::new();
    for l in 0..alg.dim() {
        let mut psi = vec![0u64; alg.dim()];
        psi[l] = 1;
        dense.push(d1.mul_vec(&psi).unwrap());
    }
    // echelonize with the dense oracle
    let mut mat = dense;
    let rank = {
        let mut rank = 0;
        for col in 0..rows {
            let Some(sel) = (rank..mat.len()).find(|&r| mat[r][col] != 0) else {
                continue;
            };
            mat.swap(rank, sel);
            let inv = f.inv(mat[rank][col]).unwrap();
            for c in 0..rows {
                mat[rank][c] = f.mul(mat[rank][c], inv);
            }
            for r in 0..mat.len() {
                if r != rank && mat[r][col] != 0 {
                    let coef = mat[r][col];
                    for c in 0..rows {
                        let s = f.mul(coef, mat[rank][c]);
                        mat[r][c] = f.sub(mat[r][c], s);
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    mat.truncate(rank);
    mat
}

/// The scalar lambda with a = lambda * b, if one exists.
fn scalar_ratio(f: FieldSpec, a: &[u64], b: &[u64]) -> Option<u64> {
    let mut lambda = None;
    for (&x, &y) in a.iter().zip(b.iter()) {
        match (x, y) {
            (0, 0) => continue,
            (_, 0) => return None,
            (x, y) => {
                let r = f.mul(x, f.inv(y).unwrap());
                match lambda {
                    None => lambda = Some(r),
                    Some(l) if l == r => {}
                    Some(_) => return None,
                }
            }
        }
    }
    lambda
}

#[test]
fn criterion_08_delta_map_vanishing() {
    use rand::SeedableRng;
    let cases: &[(&str, fn() -> &'static Case)] = &[
        ("W(1) p=5", w1_p5),
        ("W(1) p=7", w1_p7),
        ("H(2) p=5", h2_p5),
        ("H(2) p=7", h2_p7),
        ("S(3)", s3_p5),
    ];
    for (name, case_fn) in cases {
        let case = case_fn();
        let d = case.alg.dim();
        let f = case.alg.field();
        assert!(!case.cohomology.h2_reps.is_empty(), "{name} has classes");
        // all basis pairs
        for rep in &case.cohomology.h2_reps {
            for g in 0..d {
                let gv = ElementVector::basis(d, g);
                for h in 0..d {
                    let hv = ElementVector::basis(d, h);
                    let v = modlie::cohomology::delta_map(&case.alg, rep, &gv, &hv).unwrap();
                    assert_eq!(v, 0, "{name}: Delta on basis pair ({g}, {h})");
                }
            }
        }
        // 100 seeded random pairs, sharing the p-th power across classes
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(SEED);
        for _ in 0..100 {
            let g = ElementVector::random(&mut rng, f, d);
            let h = ElementVector::random(&mut rng, f, d);
            let hp = case.alg.p_power_eval(&h).unwrap();
            let nested = case
                .alg
                .iterated_bracket(&g, &h, (f.p() - 1) as usize)
                .unwrap();
            for rep in &case.cohomology.h2_reps {
                let first = rep.eval(&case.alg, &g, &hp);
                let second = rep.eval(&case.alg, &nested, &h);
                assert_eq!(f.sub(first, second), 0, "{name}: Delta on random pair");
            }
        }
    }
    println!(
        "criterion 8: PASS (Delta map zero on all basis pairs and 100 seeded random pairs per class)"
    );
}

#[test]
fn criterion_09_oracle_equivalence() {
    use rand::SeedableRng;
    // (a) dim ker delta^2 of W(1) at p = 5: sparse engine vs dense
    //     elimination.
    let case = w1_p5();
    let f = case.alg.field();
    let d2 = delta2_matrix(&case.alg, 8_000_000).unwrap();
    let sparse_kernel = pair_count(5) - d2.rank();
    let dense_kernel = pair_count(5) - dense_rank(f, d2.rows(), d2.cols(), d2.entries());
    assert_eq!(sparse_kernel, 6);
    assert_eq!(dense_kernel, 6);
    assert_eq!(case.cohomology.delta2_kernel_dim, 6);

    // (b) star_defect against an independent oracle: Jacobson terms
    //     computed in an explicitly materialized provisional extension.
    let phi = &case.cohomology.h2_reps[0];
    let ext = materialize_provisional_extension(&case.alg, phi);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(SEED);
    for sample in 0..25 {
        let u = ElementVector::random(&mut rng, f, 5);
        let w = ElementVector::random(&mut rng, f, 5);
        let fast = star_defect(&case.alg, phi, &u, &w).unwrap();
        let mut lifted_u = ElementVector::zero(6);
        lifted_u.coords[..5].copy_from_slice(&u.coords);
        let mut lifted_w = ElementVector::zero(6);
        lifted_w.coords[..5].copy_from_slice(&w.coords);
        let terms = ext.jacobson_terms(&lifted_u, &lifted_w).unwrap();
        let mut central = 0u64;
        for t in terms {
            central = f.add(central, t.coords[5]);
        }
        assert_eq!(
            fast, central,
            "star_defect oracle mismatch on sample {sample}"
        );
    }
    println!(
        "criterion 9: PASS (sparse kernel dim = dense kernel dim = 6; star_defect matches the extension oracle on 25 pairs)"
    );
}

/// g + Fc with the bracket twisted by phi and an all-zero [p]-map: the
/// provisional extension used as the independent star_defect oracle.
fn materialize_provisional_extension(
    alg: &AlgebraDescription,
    phi: &TwoCochain,
) -> AlgebraDescription {
    let d = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let mut coords: Vec<(u32, u64)> = alg.bracket_basis(i, j).to_vec();
            let central = phi.values[modlie::cohomology::pair_index(d, i, j)];
            if central != 0 {
                coords.push((d as u32, central));
            }
            if !coords.is_empty() {
                brackets.push(((i, j), coords));
            }
        }
    }
    AlgebraDescription::new(alg.field(), d + 1, None, brackets, vec![]).unwrap()
}

#[test]
fn criterion_10_property_suites() {
    use rand::SeedableRng;
    let start = Instant::now();

    // delta^2 compose delta^1 = 0 as matrices, exactly.
    for case_fn in [w1_p5, w1_p7, sl2_p5, h2_p5] {
        let case = case_fn();
        let d1 = delta1_matrix(&case.alg);
        let d2 = delta2_matrix(&case.alg, 8_000_000).unwrap();
        for l in 0..case.alg.dim() {
            let mut psi = vec![0u64; case.alg.dim()];
            psi[l] = 1;
            let phi = d1.mul_vec(&psi).unwrap();
            let composed = d2.mul_vec(&phi).unwrap();
            assert!(
                composed.iter().all(|&c| c == 0),
                "delta2(delta1(psi_{l})) != 0"
            );
        }
    }

    // H^1 = 0 on every constructed simple algebra.
    for case_fn in [
        w1_p5, w1_p7, sl2_p5, sl3_p5, sl4_p5, psl5_p5, w2_p5, k3_p5, h2_p5, h2_p7,
    ] {
        let case = case_fn();
        assert_eq!(case.cohomology.h1_dim, 0);
    }

    // Order-independence of the star evaluation: 100 random vectors per
    // algebra, ascending versus descending fold order.
    for case_fn in [w1_p5, w1_p7, h2_p5] {
        let case = case_fn();
        let d = case.alg.dim();
        let f = case.alg.field();
        let rep = &case.cohomology.h2_reps[0];
        let omega = modlie::restricted::star_extend(&case.alg, rep, vec![0; d]).unwrap();
        let descending: Vec<usize> = (0..d).rev().collect();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(SEED);
        for _ in 0..100 {
            let v = ElementVector::random(&mut rng, f, d);
            let a = omega.evaluate(&case.alg, &v).unwrap();
            let b = omega.evaluate_in_order(&case.alg, &v, &descending).unwrap();
            assert_eq!(a, b);
        }
    }

    // File round-trips: write, reparse, byte-stable rewrite, identical
    // gates and cohomology.
    for case_fn in [w1_p5, sl2_p5, h2_p5] {
        let case = case_fn();
        let text = write_algebra(&case.alg, &[]);
        let parsed = parse_algebra(&text).unwrap();
        assert_eq!(parsed, case.alg);
        assert_eq!(write_algebra(&parsed, &[]), text);
        assert!(parsed.jacobi_check().is_ok());
        assert!(parsed.restrictedness_check(5, SEED).passed());
        let re_cohom = h2_basis(&parsed, COHOMOLOGY_LIMIT).unwrap();
        assert_eq!(re_cohom.h2_dim, case.cohomology.h2_dim);
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "property suites took {elapsed:.2?} (budget 60 s)"
    );
    println!("criterion 10: PASS (property suites green in {elapsed:.2?})");
}

/// Beyond the criteria: S(4) at p = 5 is construction-only (dim 1872;
/// cohomology is past desk scale). Long tier.
#[test]
#[ignore = "long tier: S(4) construction takes minutes and several GB"]
fn s4_construction_only() {
    let alg = construct_special(4, 5, 2000).unwrap();
    assert_eq!(alg.dim(), 1872); // 3 (5^4 - 1)
    assert!(alg.jacobi_check().is_ok());
    let r = alg.restrictedness_check(0, SEED); // axiom (a) on all basis vectors
    assert!(r.passed(), "{r}");
    println!("S(4): construction only, dim 1872, Jacobi and ad-power gates pass");
}

/// A restricted cocycle from criterion 6's machinery survives a write /
/// parse round-trip of its cocycle file.
#[test]
fn cocycle_files_roundtrip_with_star_extension() {
    use modlie::io::{parse_cocycle, write_cocycle, CocycleDocument};
    let case = w1_p5();
    let rc: &RestrictedTwoCochain = &case.restricted.lifted_part()[0];
    let doc = CocycleDocument::Pair(rc.phi.clone(), rc.omega.base_values.clone());
    let text = write_cocycle(case.alg.field(), &doc, &[]);
    let (field, parsed) = parse_cocycle(&text).unwrap();
    assert_eq!(field, case.alg.field());
    assert_eq!(parsed, doc);
}
