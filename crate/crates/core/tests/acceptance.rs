//! One PASS/FAIL line per criterion at small scale, seed 42. Runs without
//! the libtest harness so the table is printed on every `cargo test`.
//!
//! Criteria listed in `KNOWN_FAILURES` fail for reasons recorded next to each
//! entry; the test asserts that exactly those criteria fail, and only in the
//! listed cells, so any other regression or surprise pass breaks the build.

use clutterlab::suite::{render_detail, render_table, run_suite, Scale, SuiteConfig};

const KNOWN_FAILURES: &[(&str, &[&str])] = &[
    // For p = q = 1, F_pq is all of E_pq, so Case II with F' = F_pq adds no
    // edges and the cell is Q(1,1) itself, which does not pack.
    ("packing", &["Q(1,1) F=caseII:all"]),
    // Same cell: Q(1,1) has Δ_r = 2.
    ("delta-r", &["Q(1,1) F=caseII:all"]),
    // Q(1,1)F* is binary and dyadic. The (E_pq)* variant of Q(2,2) is not
    // binary: PQr △ p1 p2* Q r △ P q1* q2 r* = p1 p2* q1* q2 r* is no edge.
    ("classification", &["Q(1,1)F*", "Q(2,2) F=(E_pq)*"]),
];

fn main() {
    let results = run_suite(&SuiteConfig::new(Scale::Small));
    println!("{}", render_table(&results));
    for r in &results {
        println!("{}", render_detail(r));
    }
    let mut surprises = Vec::new();
    for r in &results {
        let expected: Vec<String> = KNOWN_FAILURES
            .iter()
            .find(|(k, _)| *k == r.key)
            .map(|(_, cells)| cells.iter().map(|c| c.to_string()).collect())
            .unwrap_or_default();
        if r.failures != expected {
            surprises.push(format!("{}: failures {:?}, expected {:?}", r.key, r.failures, expected));
        }
    }
    if results.len() != 11 {
        surprises.push(format!("{} criteria ran, expected 11", results.len()));
    }
    if !surprises.is_empty() {
        eprintln!("unexpected acceptance results: {surprises:#?}");
        std::process::exit(1);
    }
    println!("acceptance: all failures match the pinned list");
}
