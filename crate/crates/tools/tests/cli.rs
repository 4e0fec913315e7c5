use std::io::Write;

use endw_tools::cli::{run, Outcome, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn endw(args: &[&str]) -> Outcome {
    run(std::iter::once("endw").chain(args.iter().copied()))
}

#[test]
fn compose_applies_the_right_factor_first() {
    let out = endw(&["compose", "x1 -> x1^2; x2 -> x2", "x1 -> x1 + 1; x2 -> x2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "x1 -> x1^2 + 1; x2 -> x2\n");
}

#[test]
fn normalize_prints_the_canonical_form() {
    let out = endw(&["--field", "qsqrt:2", "--kind", "assoc", "normalize", "mirror . linear(2,1) . mirror"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "linear(2,1) . alpha(id) . auto[] . mirror^0\n");
}

#[test]
fn lemma42_reports_both_solutions() {
    let out = endw(&["verify", "lemma42"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("PASS lemma42 solve-q {(1,0),(0,1)}"), "{}", out.stdout);
    assert!(out.stdout.contains("PASS lemma42 solve-qsqrt:2 {(1,0),(0,1)}"), "{}", out.stdout);
    assert!(out.stdout.ends_with("summary 2 passed 0 failed\n"));
}

#[test]
fn thm2_passes_in_the_commutative_plane() {
    let out = endw(&["--kind", "comm", "--vars", "2", "verify", "thm2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.lines().filter(|l| l.starts_with("PASS thm2")).count() > 0);
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn reports_are_byte_stable() {
    let args = ["--seed", "11", "verify", "thm1"];
    let first = endw(&args);
    assert_eq!(first, endw(&args));
    assert_ne!(first.stdout, endw(&["--seed", "12", "verify", "thm1"]).stdout);
}

#[test]
fn decomposition_recovers_a_tabulated_form() {
    let flags = ["--field", "qsqrt:2", "--kind", "assoc", "--vars", "2"];
    let mu = "linear(2,-1) . alpha(conj) . auto[elem 1 3*x2^2; affine [[0,1],[1,0]] + [1,0]] . mirror^1";
    let table = endw(&[&flags[..], &["table", mu]].concat());
    assert_eq!(table.code, EXIT_OK, "{}", table.stderr);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(table.stdout.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let witness = "elem 1 3*x2^2; affine [[0,1],[1,0]] + [1,0]";
    let out = endw(&[&flags[..], &["decompose", path, "--witness", "id", "--witness", witness]].concat());
    assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    let normalized = endw(&[&flags[..], &["normalize", mu]].concat());
    assert_eq!(out.stdout.lines().next(), normalized.stdout.lines().next());
    assert!(out.stdout.contains("witness 2\n"), "{}", out.stdout);
}

#[test]
fn tampered_tables_report_violations() {
    let flags = ["--field", "qsqrt:2", "--kind", "comm", "--vars", "2"];
    let table = endw(&[&flags[..], &["table", "linear(1,0) . alpha(id) . auto[id] . mirror^0"]].concat());
    let tampered = table.stdout.replace("x1*x2 => x1*x2", "x1*x2 => x1*x2 + 1");
    assert_ne!(tampered, table.stdout);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(tampered.as_bytes()).unwrap();
    let out = endw(&[&flags[..], &["decompose", file.path().to_str().unwrap()]].concat());
    assert_eq!(out.code, EXIT_CHECK_FAILED, "{}", out.stdout);
    assert!(out.stdout.contains("violation x1*x2 => x1*x2 + 1 expected x1*x2"), "{}", out.stdout);
}

#[test]
fn ideal_membership() {
    let member = endw(&["ideal", "member", "x1^2 + x1*x2", "elem 1 x2", "1"]);
    assert_eq!(member.code, EXIT_OK, "{}", member.stderr);
    assert!(member.stdout.ends_with("\nmember\n"), "{}", member.stdout);
    let other = endw(&["ideal", "member", "x2", "elem 1 x2", "1"]);
    assert!(other.stdout.ends_with("\nnot a member\n"), "{}", other.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "nonsense"][..],
        &["compose", "x1 -> x1 +", "x1 -> x1"],
        &["--kind", "lie", "verify", "all"],
        &["--field", "qsqrt:4", "normalize", "id"],
        &["normalize", "mirror"],
        &["decompose", "/nonexistent/table"],
        &["ideal", "member", "x1", "id", "3"],
        &["frobnicate"],
    ] {
        let out = endw(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_errors_point_at_the_column() {
    let out = endw(&["compose", "x1 -> x1 + ; x2 -> x2", "x1 -> x1; x2 -> x2"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("column"), "{}", out.stderr);
}
