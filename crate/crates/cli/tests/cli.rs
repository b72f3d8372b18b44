use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clutterlab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn setup() -> TempDir {
    let dir = TempDir::new().unwrap();
    for args in [
        &["gen", "-p", "1", "-q", "1", "-o", "q11"][..],
        &["gen", "-p", "1", "-q", "1", "--f", "caseI:all", "-o", "q11_fstar"],
        &["gen", "-p", "2", "-q", "1", "--f", "caseI:all", "-o", "q21_fstar"],
    ] {
        assert_eq!(code(&run(dir.path(), args)), 0);
    }
    dir
}

#[test]
fn gen_writes_both_formats() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["gen", "-p", "2", "-q", "1", "--f", "none"]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("q21_none.clt")).unwrap();
    assert!(text.starts_with("# qpq p=2 q=1 f=none\nvertices: p1 p2 p1* p2* q1 q1* r r*\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("edge:")).count(), 8);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("q21_none.json")).unwrap()).unwrap();
    assert_eq!(json["edges"].as_array().unwrap().len(), 8);
    assert_eq!(json["descriptor"]["f"], "none");

    let o = run(dir.path(), &["gen", "-p", "1", "-q", "1", "--f", "caseII:1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("7 edges"));
}

#[test]
fn gen_custom_from_file() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("extra.clt"), "vertices: p1* q1* r\nedge: p1* q1* r\n").unwrap();
    // p1* q1* r is already an edge of Q(1,1), so it is skipped as a duplicate.
    let o = run(dir.path(), &["gen", "-p", "1", "-q", "1", "--f", "custom:extra.clt", "-o", "c"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(dir.path().join("bad.clt"), "vertices: p1 q1\nedge: p1 q1\n").unwrap();
    let o = run(dir.path(), &["gen", "-p", "1", "-q", "1", "--f", "custom:bad.clt"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn bad_fspec_is_an_error() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["gen", "-p", "1", "-q", "1", "--f", "caseIII:1"]);
    assert_eq!(code(&o), 3);
    assert!(!o.stderr.is_empty());
}

#[test]
fn check_pack_reports_mnp() {
    let dir = setup();
    let o = run(dir.path(), &["check", "pack", "q11.clt", "--json", "r.json"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failing minor: delete {} contract {} (τ = 2, ν = 1)"));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(r["outcome"], "fail");
    assert_eq!(r["data"]["failing"]["tau"], 2);
    assert_eq!(r["digest"].as_str().unwrap().len(), 64);
    assert_eq!(code(&run(dir.path(), &["check", "pack", "q11_fstar.clt"])), 0);
}

#[test]
fn check_mengerian_and_delta_r() {
    let dir = setup();
    let o = run(dir.path(), &["check", "mengerian", "q11_fstar.clt", "--wmax", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pass-bounded: 4096"));
    let o = run(dir.path(), &["check", "delta-r", "q21_fstar.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Δ_r = 1"));
    let o = run(dir.path(), &["check", "delta-r", "q11.clt"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("Δ_r = 2"));
}

#[test]
fn check_other_kinds() {
    let dir = setup();
    assert_eq!(code(&run(dir.path(), &["check", "konig", "q11.clt"])), 1);
    assert_eq!(code(&run(dir.path(), &["check", "konig", "q11_fstar.clt"])), 0);
    assert_eq!(code(&run(dir.path(), &["check", "ideal", "q11.clt"])), 0);
    let o = run(dir.path(), &["check", "2part", "q11.clt"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("{p1,p1*} {q1,q1*} {r,r*}"));
    let o = run(dir.path(), &["check", "classify", "q21_fstar.clt"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("binary = false, dyadic = false, balanced = false"));

    std::fs::write(dir.path().join("tri.clt"), "vertices: a b c\nedge: a b\nedge: b c\nedge: a c\n").unwrap();
    let o = run(dir.path(), &["check", "ideal", "tri.clt"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("1/2"));
    assert_eq!(code(&run(dir.path(), &["check", "2part", "tri.clt"])), 1);
    assert_eq!(code(&run(dir.path(), &["check", "mengerian", "tri.clt"])), 1);
}

#[test]
fn classify_bounded_balanced_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    // A 5-cycle needs order-5 submatrices to show it is unbalanced.
    std::fs::write(
        dir.path().join("c5.clt"),
        "vertices: a b c d e\nedge: a b\nedge: b c\nedge: c d\nedge: d e\nedge: e a\n",
    )
    .unwrap();
    assert_eq!(code(&run(dir.path(), &["check", "classify", "c5.clt", "--balanced-limit", "5"])), 0);
    let o = run(dir.path(), &["check", "classify", "c5.clt", "--balanced-limit", "3"]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}

#[test]
fn hypergraph_flag_minimalizes() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("h.clt"), "vertices: a b\nedge: a\nedge: a b\n").unwrap();
    let o = run(dir.path(), &["check", "konig", "h.clt"]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(dir.path(), &["check", "konig", "h.clt", "--hypergraph"])), 0);
}

#[test]
fn parse_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.clt"), "vertices: a\nedge: z\n").unwrap();
    let o = run(dir.path(), &["check", "konig", "bad.clt"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&run(dir.path(), &["check", "konig", "missing.clt"])), 3);
    assert_eq!(code(&run(dir.path(), &["check", "nonsense", "bad.clt"])), 3);
    assert_eq!(code(&run(dir.path(), &["--help"])), 0);
}

#[test]
fn decompose_inline_and_file() {
    let dir = setup();
    let o = run(dir.path(), &["decompose", "q11_fstar.clt", "--w", "1,1,1,1,1,1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("τ^ω = 2, 2 steps"));
    assert!(out.contains("verified: true"));
    let o = run(dir.path(), &["decompose", "q11_fstar.clt", "--w", "0,0,0,0,0,0", "--json", "t.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("edges: []"));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(r["data"]["trace"]["edges"].as_array().unwrap().len(), 0);

    std::fs::write(dir.path().join("w.txt"), "# weights\np1=3\np1*=2\nq1=1\nq1*=3\nr=2\nr*=2\n").unwrap();
    let o = run(dir.path(), &["decompose", "q11_fstar.clt", "--w-file", "w.txt"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    std::fs::write(dir.path().join("wbad.txt"), "zz=1\n").unwrap();
    assert_eq!(code(&run(dir.path(), &["decompose", "q11_fstar.clt", "--w-file", "wbad.txt"])), 3);
}

#[test]
fn decompose_rejects_other_inputs() {
    let dir = setup();
    assert_eq!(code(&run(dir.path(), &["decompose", "q11.clt", "--w", "1,1,1,1,1,1"])), 3);
    assert_eq!(code(&run(dir.path(), &["decompose", "q11_fstar.clt", "--w", "1,1"])), 3);
    std::fs::write(dir.path().join("plain.clt"), "vertices: a b\nedge: a b\n").unwrap();
    assert_eq!(code(&run(dir.path(), &["decompose", "plain.clt", "--w", "1,1"])), 3);
}

#[test]
fn verify_suite_filter_and_determinism() {
    let dir = TempDir::new().unwrap();
    let a = run(dir.path(), &["verify-suite", "small", "--only", "duality", "--verbose"]);
    let b = run(dir.path(), &["verify-suite", "small", "--only", "duality", "--verbose"]);
    assert_eq!(code(&a), 0);
    let strip = |s: String| -> Vec<String> { s.lines().skip(1).map(str::to_string).collect() };
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
    let o = run(dir.path(), &["verify-suite", "small", "--only", "packing", "--json", "s.json"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL packing"));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(r["data"]["results"][0]["key"], "packing");
    assert_eq!(code(&run(dir.path(), &["verify-suite", "small", "--only", "nothing-matches"])), 3);
    let o = run(dir.path(), &["verify-suite", "small", "--only", "bloker"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS blocker-formula"));
    assert!(!stdout(&o).contains("duality"));
}

#[test]
fn thread_cap_env() {
    let dir = setup();
    let o = Command::new(env!("CARGO_BIN_EXE_clutterlab"))
        .current_dir(dir.path())
        .env("CLUTTERLAB_THREADS", "1")
        .args(["check", "pack", "q21_fstar.clt"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_clutterlab"))
        .current_dir(dir.path())
        .env("CLUTTERLAB_THREADS", "0")
        .args(["check", "pack", "q21_fstar.clt"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}
