//! Acceptance battery: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use endw_tools::suites::{run_suite, CaseResult, Suite, SuiteConfig};

const SEED: u64 = 0;

struct Criterion {
    pass: bool,
    detail: String,
}

/// Cases whose id starts with one of `prefixes`.
fn cases<'a>(lines: &'a [CaseResult], prefixes: &[&str]) -> Vec<&'a CaseResult> {
    lines.iter().filter(|l| prefixes.iter().any(|p| l.case.starts_with(p))).collect()
}

fn all_pass(label: &str, selected: &[&CaseResult], expected: usize) -> Criterion {
    let failed: Vec<String> = selected.iter().filter(|l| !l.pass).map(|l| l.to_string()).collect();
    let pass = failed.is_empty() && selected.len() == expected;
    let detail = if pass {
        format!("{label}: {} cases", selected.len())
    } else if selected.len() != expected {
        format!("{label}: {} cases, expected {expected}", selected.len())
    } else {
        format!("{label}: {} failed, first: {}", failed.len(), failed[0])
    };
    Criterion { pass, detail }
}

fn combine(parts: Vec<Criterion>) -> Criterion {
    Criterion {
        pass: parts.iter().all(|c| c.pass),
        detail: parts.into_iter().map(|c| c.detail).collect::<Vec<_>>().join("; "),
    }
}

fn timed(suite: Suite) -> (Vec<CaseResult>, Duration) {
    let start = Instant::now();
    let lines = run_suite(suite, &SuiteConfig::new(SEED));
    (lines, start.elapsed())
}

fn battery() -> (std::process::Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_endw"))
        .args(["--seed", &SEED.to_string(), "verify", "all"])
        .output()
        .expect("run endw");
    (out, start.elapsed())
}

#[test]
fn acceptance() {
    let mut results: Vec<(usize, Criterion)> = Vec::new();

    let (semigroup, elapsed) = timed(Suite::Semigroup);
    let mut c1 = combine(vec![
        all_pass("homomorphism", &cases(&semigroup, &["hom-"]), 100),
        all_pass("identity", &cases(&semigroup, &["id-"]), 100),
    ]);
    c1.pass &= elapsed < Duration::from_secs(30);
    c1.detail.push_str(&format!("; {:.2}s", elapsed.as_secs_f64()));
    results.push((1, c1));

    let (lemma42, _) = timed(Suite::Lemma42);
    let mut c2 = all_pass("solver", &cases(&lemma42, &["solve-q", "solve-qsqrt"]), 2);
    c2.pass &= lemma42.iter().all(|l| l.detail == "{(1,0),(0,1)}");
    results.push((2, c2));

    let (decompose, _) = timed(Suite::Lemma32_33);
    results.push((3, all_pass("round-trip", &cases(&decompose, &["dec-"]), 50)));

    let (ideals, _) = timed(Suite::Lemma31);
    results.push((
        4,
        combine(vec![
            all_pass("members", &cases(&ideals, &["member-"]), 100),
            all_pass("non-members", &cases(&ideals, &["nonmember-"]), 100),
        ]),
    ));

    let (thm2, _) = timed(Suite::Thm2);
    results.push((
        5,
        combine(vec![
            all_pass("linear", &cases(&thm2, &["linear-"]), 20),
            all_pass("square", &cases(&thm2, &["square"]), 1),
            all_pass("planted", &cases(&thm2, &["planted-"]), 10),
        ]),
    ));

    let (mirror, _) = timed(Suite::Mirror);
    results.push((
        6,
        combine(vec![
            all_pass("anti-multiplicative", &cases(&mirror, &["anti"]), 1),
            all_pass("separation", &cases(&mirror, &["separate-"]), 50),
        ]),
    ));

    let (lemma41, _) = timed(Suite::Lemma41);
    results.push((
        7,
        combine(vec![
            all_pass("normalize", &cases(&lemma41, &["norm-"]), 100),
            all_pass("linear invariance", &cases(&thm2, &["invariance-"]), 20),
        ]),
    ));

    results.push((8, all_pass("constancy", &cases(&semigroup, &["const-"]), 100)));

    let (first, elapsed) = battery();
    let (second, _) = battery();
    let stdout = String::from_utf8_lossy(&first.stdout);
    let summary = stdout.lines().last().unwrap_or("").to_string();
    results.push((
        9,
        Criterion {
            pass: first.status.code() == Some(0)
                && elapsed < Duration::from_secs(120)
                && first.stdout == second.stdout
                && !first.stdout.is_empty(),
            detail: format!(
                "exit {:?}, {:.2}s, stable {}, {summary}",
                first.status.code(),
                elapsed.as_secs_f64(),
                first.stdout == second.stdout
            ),
        },
    ));

    for (n, c) in &results {
        println!("{} criterion {n} {}", if c.pass { "PASS" } else { "FAIL" }, c.detail);
    }
    let failed: Vec<usize> = results.iter().filter(|(_, c)| !c.pass).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
