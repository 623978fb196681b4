//! Acceptance criteria 1 to 11, one line each.

use std::process::ExitCode;
use std::time::Instant;

use h2lab::report::{Report, RunConfig, Status};
use h2lab::suites::run_suite;

fn cfg(seed: u64, degree: u32, trials: usize) -> RunConfig {
    RunConfig {
        seed,
        degree,
        trials,
        ..RunConfig::default()
    }
}

fn suite(name: &str, c: RunConfig) -> Report {
    run_suite(name, &c).expect("known suite")
}

fn strict(reports: &[Report]) -> (bool, String) {
    let mut pass = 0;
    let mut notes = Vec::new();
    for r in reports {
        let s = r.summary();
        pass += s.pass;
        if s.fail + s.inconclusive > 0 || r.checks.is_empty() {
            notes.push(format!("{}: {} fail, {} inconclusive", r.suite, s.fail, s.inconclusive));
        }
        for c in r.checks.iter().filter(|c| c.status != Status::Pass).take(3) {
            notes.push(format!("  {} {}: {}", c.status.name(), c.id, c.detail));
        }
    }
    let ok = notes.is_empty();
    (ok, if ok { format!("{pass} checks") } else { notes.join("\n") })
}

fn has(r: &Report, id: &str) -> bool {
    r.checks.iter().any(|c| c.id == id && c.status == Status::Pass)
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> (bool, String));
    let criteria: [Criterion; 11] = [
        ("projection algebra on 1000 random Laurent polynomials", || {
            strict(&[suite("projections", cfg(0, 8, 1000))])
        }),
        ("block representation equals matrix_of (100 symbols, N = 6)", || {
            strict(&[suite("eq36-blocks", cfg(0, 6, 100))])
        }),
        ("semicommutator product formula on monomials of degree <= 6", || {
            strict(&[suite("eq24", cfg(0, 6, 0))])
        }),
        ("intertwining and multiplicativity identities (200 pairs, degree <= 6)", || {
            strict(&[suite("lemma32", cfg(0, 6, 200))])
        }),
        ("Berezin commutator identity on 9 points, including -0.1456", || {
            let r = suite("lemma31", cfg(0, 8, 0));
            let (ok, msg) = strict(std::slice::from_ref(&r));
            let reference = has(&r, "lemma31/reference-value");
            let points = r.checks.iter().filter(|c| c.id.starts_with("lemma31/pair")).count();
            (ok && reference && points == 81, format!("{msg}, {points} pair-points"))
        }),
        ("commuting and semicommuting characterizations (500 pairs per class, N = 8)", || {
            let reports = [
                suite("thm-semicommute", cfg(0, 8, 500)),
                suite("thm-commute", cfg(0, 8, 500)),
                suite("table1", cfg(0, 8, 0)),
            ];
            let coverage = has(&reports[2], "table1/coverage");
            let (ok, msg) = strict(&reports);
            (ok && coverage, msg)
        }),
        ("shift counterexample on conj(z1)*conj(z2)", || strict(&[suite("remark", cfg(0, 8, 0))])),
        ("normality of z1 + conj(z1), non-normality of z1 + 2*conj(z1)", || {
            let r = suite("normality", cfg(0, 8, 200));
            let named = has(&r, "normality/real-part-is-normal") && has(&r, "normality/unbalanced-is-not-normal");
            let (ok, msg) = strict(std::slice::from_ref(&r));
            (ok && named, msg)
        }),
        ("derivative linkage on 100 one-variable pairs", || strict(&[suite("eq11", cfg(0, 8, 100))])),
        ("slice identity for l, k <= 3 and z2-degree <= 6", || {
            strict(&[suite("lemma33-slice", cfg(0, 8, 50)), suite("lemma34", cfg(0, 8, 200))])
        }),
        ("determinism of table1 with seed 7", || {
            let a = suite("table1", cfg(7, 8, 200));
            let b = suite("table1", cfg(7, 8, 200));
            let same = a.determinism_hash() == b.determinism_hash()
                && serde_json::to_string(&a.body()).unwrap() == serde_json::to_string(&b.body()).unwrap();
            (same, a.determinism_hash())
        }),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, msg) = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {}: {name} [{msg}] ({secs:.2} s)",
            k + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!ok);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
