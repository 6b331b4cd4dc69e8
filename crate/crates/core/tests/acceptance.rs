//! Acceptance suite: every headline identity at zero tolerance, with the
//! stated wall-time budgets. One pass/fail line per criterion (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};
use symdirac_core::verify::{run_suite, Config, Status};

fn run_all(name: &str, budget: Duration) -> (bool, Duration) {
    let cfg = Config::default();
    let start = Instant::now();
    let report = run_suite(name, &cfg).expect("registered suite");
    let elapsed = start.elapsed();
    let ok = report.checks.iter().all(|c| c.status == Status::Pass);
    if !ok {
        for c in &report.checks {
            if c.status != Status::Pass {
                eprintln!("  FAILED {} [{}]: {}", c.id, c.anchor, c.witness);
            }
        }
    }
    assert!(
        elapsed <= budget,
        "suite {} exceeded its budget: {:?} > {:?}",
        name,
        elapsed,
        budget
    );
    (ok, elapsed)
}

fn announce(criterion: &str, ok: bool, elapsed: Duration) {
    println!(
        "acceptance {}: {} ({} ms)",
        criterion,
        if ok { "pass" } else { "FAIL" },
        elapsed.as_millis()
    );
    assert!(ok, "criterion {} failed", criterion);
}

#[test]
fn criterion_01_lie_commutator() {
    // both closed forms of the commutator in U(g) (x) W, three presets,
    // under 5 s each
    let cfg = Config::default();
    let start = Instant::now();
    let report = run_suite("lie-commutator", &cfg).unwrap();
    let elapsed = start.elapsed();
    let ok = report.checks.iter().all(|c| c.status == Status::Pass)
        && report.checks.iter().all(|c| c.ms < 5_000)
        && report.checks.len() == 3;
    announce("1 (lie commutator, sl2-split/so3/gl2)", ok, elapsed);
}

#[test]
fn criterion_02_hecke_commutator() {
    // exact tensor equality, both forms, symbolic parameters, for
    // A1 A2 A3 B2 C2 G2, plus the explicit small-rank expansions; 60 s total
    let (ok, elapsed) = run_all("hecke-commutator", Duration::from_secs(60));
    announce("2 (hecke commutator, A1..G2 + expansions)", ok, elapsed);
}

#[test]
fn criterion_03_deg0_table() {
    // all sixteen tabulated systems (A_n n<=4, B_n/C_n n<=4, D4, E6, E7,
    // E8, F4, G2) by three routes; E8 within 120 s
    let cfg = Config::default();
    let start = Instant::now();
    let report = run_suite("deg0-table", &cfg).unwrap();
    let elapsed = start.elapsed();
    let mut ok = report.checks.iter().all(|c| c.status == Status::Pass);
    let e8 = report
        .checks
        .iter()
        .find(|c| c.id.ends_with("E8"))
        .expect("E8 row present");
    ok &= e8.ms < 120_000;
    announce("3 (degree-0 constants, 16 systems)", ok, elapsed);
}

#[test]
fn criterion_04_casimir_relation() {
    let (ok, elapsed) = run_all("casimir-relation", Duration::from_secs(300));
    announce("4 (nu'(Omega'_W) = a + b Omega(sl2))", ok, elapsed);
}

#[test]
fn criterion_05_o_invariance() {
    let (ok, elapsed) = run_all("o-invariance", Duration::from_secs(300));
    announce("5 (orthogonal invariance of nu'(Omega'_W))", ok, elapsed);
}

#[test]
fn criterion_06_sn_class_sums() {
    let (ok, elapsed) = run_all("sn-class-sums", Duration::from_secs(60));
    announce("6 (symmetric group class sums, n <= 5)", ok, elapsed);
}

#[test]
fn criterion_07_bn_class_sums() {
    let (ok, elapsed) = run_all("bn-class-sums", Duration::from_secs(300));
    announce("7 (hyperoctahedral class sums, n <= 3)", ok, elapsed);
}

#[test]
fn criterion_08_omega_prime_group() {
    let (ok, elapsed) = run_all("omega-prime-group", Duration::from_secs(300));
    announce("8 (group-algebra Omega'_W, S_n n <= 5 and W_n n <= 3)", ok, elapsed);
}

#[test]
fn criterion_09_sl2_casimir_eta() {
    let (ok, elapsed) = run_all("sl2-casimir-eta", Duration::from_secs(300));
    announce("9 (sl2 Casimir normal form, n <= 8)", ok, elapsed);
}

#[test]
fn criterion_10_sl2_modules() {
    let (ok, elapsed) = run_all("sl2-modules", Duration::from_secs(300));
    announce(
        "10 (module kernels, spanning vectors, eigenvalue, odd injectivity)",
        ok,
        elapsed,
    );
}

#[test]
fn criterion_11_star_adjointness() {
    let (ok, elapsed) = run_all("star-adjointness", Duration::from_secs(300));
    announce(
        "11 (star operations, contraction vanishing, difference formulas)",
        ok,
        elapsed,
    );
}

#[test]
fn criterion_12_property_suites() {
    let (ok, elapsed) = run_all("pbw-properties", Duration::from_secs(120));
    announce("12 (property suites, fixed seed)", ok, elapsed);
}
