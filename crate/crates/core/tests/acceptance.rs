//! Runs the full verification suite for `a = π` and `a = 1` and reports one
//! pass/fail line per acceptance criterion.

use dbscale::report::{CheckRecord, RunConfig};
use dbscale::suite::run_suite;
use std::collections::BTreeMap;
use std::f64::consts::PI;

const CRITERIA: [&str; 16] = [
    "kernel consistency",
    "reproducing property (both inner products)",
    "s_beta identity",
    "spectra and interlacing",
    "resolvent and Cayley identities",
    "Cayley unitarity and sharp isometries",
    "k+2 reproducing property",
    "duality and Assoc B roundtrip",
    "non-density witness",
    "Q-function",
    "Krein formula",
    "domain characterization",
    "D0 = dom(S)",
    "S-tilde pairing",
    "counterexample",
    "cyclicity",
];

fn run_criteria(cfg: &RunConfig) {
    let report = run_suite(cfg).expect("valid configuration");
    let mut by_criterion: BTreeMap<u32, Vec<&CheckRecord>> = BTreeMap::new();
    for r in &report.records {
        by_criterion.entry(r.criterion().expect("numbered check id")).or_default().push(r);
    }
    let mut failed = Vec::new();
    for (n, name) in (1u32..).zip(CRITERIA) {
        let recs = by_criterion.get(&n).map(Vec::as_slice).unwrap_or(&[]);
        let pass = !recs.is_empty() && recs.iter().all(|r| r.pass);
        let detail: Vec<String> =
            recs.iter().map(|r| format!("{}: err={:.3e} tol={:.1e}", r.check_id, r.max_abs_err, r.tol)).collect();
        println!("criterion {n:2} {:4} {name} [{}]", if pass { "PASS" } else { "FAIL" }, detail.join("; "));
        if !pass {
            failed.push(n);
        }
    }
    let total_ms: f64 = report.records.iter().map(|r| r.runtime_ms).sum();
    println!("summary (a = {}): {}/{} checks passed, {:.1} s of check time", cfg.a, report.summary.passed, report.summary.total, total_ms / 1e3);
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn acceptance_criteria() {
    run_criteria(&RunConfig { a: PI, ..RunConfig::default() });
}

#[test]
fn acceptance_criteria_unit_bandwidth() {
    run_criteria(&RunConfig { a: 1.0, ..RunConfig::default() });
}
