//! End-to-end command-line tests: every subcommand, the documented exit
//! codes, determinism under fixed seeds, and the golden survey output.

use std::path::Path;
use std::process::{Command, Output};

fn modlie(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn construct_verify_h2_h2star_extend_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let out = modlie(
        &[
            "construct",
            "--family",
            "witt",
            "--n",
            "1",
            "--p",
            "5",
            "--out",
            "w1.alg",
        ],
        dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = modlie(&["verify", "w1.alg", "--samples", "20", "--seed", "7"], dir);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("jacobi: pass"));
    assert!(text.contains("restrictedness: pass"));
    assert!(text.contains("simplicity: pass"));

    let out = modlie(&["h2", "w1.alg", "--cocycles-out", "w1.cocycle"], dir);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dim H2 = 1"));
    assert!(dir.join("w1.cocycle").exists());

    let out = modlie(&["h2star", "w1.alg", "--basis-out", "basis"], dir);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dim H2* = 6"));
    for k in 0..5 {
        assert!(dir.join(format!("basis/frobenius_{k}.cocycle")).exists());
    }
    assert!(dir.join("basis/lifted_0.cocycle").exists());

    // extend --frobenius then verify: exit 0
    let out = modlie(
        &["extend", "w1.alg", "--frobenius", "2", "--out", "e2.alg"],
        dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = modlie(&["verify", "e2.alg", "--checks", "jacobi,restricted"], dir);
    assert!(out.status.success());

    // extend by the lifted cocycle file
    let out = modlie(
        &[
            "extend",
            "w1.alg",
            "--cocycle",
            "basis/lifted_0.cocycle",
            "--out",
            "lift.alg",
        ],
        dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = modlie(
        &["verify", "lift.alg", "--checks", "jacobi,restricted"],
        dir,
    );
    assert!(out.status.success());

    // delta-map of the canonical cocycle vanishes
    let out = modlie(&["delta-map", "w1.alg", "--cocycle", "w1.cocycle"], dir);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("phi is a cocycle"));
    assert!(text.contains("nonzero on 0 of"));
}

#[test]
fn construct_to_stdout_reparses() {
    let tmp = tempfile::tempdir().unwrap();
    let out = modlie(
        &["construct", "--family", "sl", "--n", "2", "--p", "7"],
        tmp.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("p 7\ndim 3\n"), "{text}");
    let parsed = modlie::io::parse_algebra(&text).unwrap();
    assert_eq!(parsed.dim(), 3);
}

#[test]
fn exit_codes_match_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    // usage error: unknown flag (clap exits 2)
    let out = modlie(&["construct", "--nonsense"], dir);
    assert_eq!(out.status.code(), Some(2));

    // file error: missing input
    let out = modlie(&["verify", "missing.alg"], dir);
    assert_eq!(out.status.code(), Some(2));

    // parse error with line diagnostics
    std::fs::write(dir.join("bad.alg"), "p 5\ndim 3\nb 2 1 0 3\n").unwrap();
    let out = modlie(&["verify", "bad.alg"], dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    // resource guard
    let out = modlie(
        &["construct", "--family", "witt", "--n", "4", "--p", "5"],
        dir,
    );
    assert_eq!(out.status.code(), Some(3));

    // guard override succeeds (W(3): dim 375 over the default... within
    // 2000 actually, so use the limit flag to push the guard down)
    let out = modlie(
        &[
            "construct",
            "--family",
            "witt",
            "--n",
            "2",
            "--p",
            "5",
            "--dim-limit",
            "10",
        ],
        dir,
    );
    assert_eq!(out.status.code(), Some(3));

    // verification failure: an abelian algebra is not simple
    std::fs::write(dir.join("abelian.alg"), "p 5\ndim 3\n").unwrap();
    let out = modlie(&["verify", "abelian.alg", "--checks", "simple"], dir);
    assert_eq!(out.status.code(), Some(1));

    // verification failure: broken pmap fails the restrictedness gate
    std::fs::write(
        dir.join("badpm.alg"),
        "p 5\ndim 5\nb 0 1 0 1\nb 0 2 1 2\nb 0 3 2 3\nb 0 4 3 4\nb 1 2 2 1\nb 1 3 3 2\nb 1 4 4 3\nb 2 3 4 1\npm 2 2 1\n",
    )
    .unwrap();
    let out = modlie(&["verify", "badpm.alg", "--checks", "restricted"], dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn commands_are_deterministic_under_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let out = modlie(
        &[
            "construct",
            "--family",
            "hamiltonian",
            "--n",
            "2",
            "--p",
            "5",
            "--out",
            "h2.alg",
        ],
        dir,
    );
    assert!(out.status.success());
    let a = modlie(
        &["verify", "h2.alg", "--seed", "42", "--samples", "30"],
        dir,
    );
    let b = modlie(
        &["verify", "h2.alg", "--seed", "42", "--samples", "30"],
        dir,
    );
    assert_eq!(stdout(&a), stdout(&b));
    let a = modlie(&["h2star", "h2.alg", "--seed", "9"], dir);
    let b = modlie(&["h2star", "h2.alg", "--seed", "9"], dir);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn report_matches_golden_dim130() {
    let tmp = tempfile::tempdir().unwrap();
    let out = modlie(&["report", "--p", "5", "--max-dim", "130"], tmp.path());
    assert!(out.status.success());
    let expected = include_str!("golden/report_p5_dim130.txt");
    assert_eq!(stdout(&out), expected);
}

#[test]
fn report_matches_golden_dim300_full_tier() {
    let tmp = tempfile::tempdir().unwrap();
    let out = modlie(&["report", "--p", "5", "--max-dim", "300"], tmp.path());
    assert!(out.status.success());
    let expected = include_str!("golden/report_p5_dim300.txt");
    assert_eq!(stdout(&out), expected);
}

#[test]
fn constructed_files_reverify_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    for (family, n, p, dim) in [("contact", "3", "5", 125), ("psl", "5", "5", 23)] {
        let file = format!("{family}.alg");
        let out = modlie(
            &[
                "construct",
                "--family",
                family,
                "--n",
                n,
                "--p",
                p,
                "--out",
                &file,
            ],
            dir,
        );
        assert!(out.status.success());
        let text = std::fs::read_to_string(dir.join(&file)).unwrap();
        let parsed = modlie::io::parse_algebra(&text).unwrap();
        assert_eq!(parsed.dim(), dim);
        let out = modlie(&["verify", &file, "--samples", "10"], dir);
        assert!(out.status.success(), "{family} reverify");
    }
}
