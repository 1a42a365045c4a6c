use std::path::PathBuf;
use std::process::{Command, Output};

fn ncinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn fixture_text(id: &str) -> serde_json::Value {
    let path = format!("{}/../core/fixtures/{id}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reproduce_all_fixtures_succeeds() {
    let o = ncinv(&["reproduce", "all", "--output", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let runs = json(&o);
    let runs = runs.as_array().unwrap();
    assert!(runs.len() >= 12);
    for r in runs {
        assert_eq!(r["status"], "ok");
        assert_eq!(r["mismatches"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn reproduce_is_byte_identical() {
    let a = ncinv(&["reproduce", "ex3.4", "--output", "json"]);
    let b = ncinv(&["reproduce", "ex3.4", "--output", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let t = ncinv(&["reproduce", "ex1.2.1", "--m", "3", "--output", "text"]);
    let u = ncinv(&["reproduce", "ex1.2.1", "--m", "3", "--output", "text"]);
    assert_eq!(t.stdout, u.stdout);
}

#[test]
fn run_report_header() {
    let o = ncinv(&["tau", "ex3.4", "--output", "json", "--seed", "7"]);
    let r = json(&o);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["seed"], 7);
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["truncation"]["max_degree"], 6);
    assert!(r.get("timing_ms").is_none());
    assert_eq!(r["report"]["tau"]["tau"]["value"], 3);
    let timed = json(&ncinv(&["tau", "ex3.4", "--output", "json", "--timing"]));
    assert!(timed["timing_ms"].is_number());
}

#[test]
fn flags_override_truncation() {
    let r = json(&ncinv(&[
        "invariants",
        "ex3.4",
        "--output",
        "json",
        "--max-degree",
        "4",
        "--max-homological",
        "2",
    ]));
    assert_eq!(r["truncation"]["max_degree"], 4);
    assert_eq!(r["truncation"]["max_homological"], 2);
    assert_eq!(
        r["report"]["invariants"]["dims"].as_array().unwrap().len(),
        5
    );
}

#[test]
fn file_input_hash_matches_builtin() {
    let path = scratch("ex3.4.json", &fixture_text("ex3.4").to_string());
    let a = json(&ncinv(&[
        "beta",
        path.to_str().unwrap(),
        "--output",
        "json",
    ]));
    let b = json(&ncinv(&["beta", "ex3.4", "--output", "json"]));
    assert_eq!(a["input"]["sha256"], b["input"]["sha256"]);
    assert_eq!(a["report"], b["report"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ncinv-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let o = ncinv(&[
        "series",
        "sign-kx",
        "--output",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["report"]["series"]["ratio_at_one"], "2");
}

#[test]
fn validation_failures_exit_2() {
    assert_eq!(code(&ncinv(&["validate", "ex3.7-bad-integral"])), 2);
    assert_eq!(code(&ncinv(&["basis", "no-such-fixture"])), 2);
    let p = scratch(
        "bad.json",
        r#"{"name": "x", "algebra": {"generators": []}, "action": {"group": {"generators": []}}, "colour": 1}"#,
    );
    let o = ncinv(&["basis", p.to_str().unwrap(), "--output", "json"]);
    assert_eq!(code(&o), 2);
    assert!(json(&o)["error"].as_str().unwrap().contains("colour"));
}

#[test]
fn caps_exit_3() {
    let mut doc = fixture_text("ex1.3");
    doc["parameters"]["word_cap"] = 10.into();
    doc.as_object_mut().unwrap().remove("expect");
    let p = scratch("capped.json", &doc.to_string());
    assert_eq!(code(&ncinv(&["invariants", p.to_str().unwrap()])), 3);
}

#[test]
fn certified_violation_exits_4() {
    // A false assertion: the invariants of the swap on k_{-1}[x,y] do not have finite global dimension.
    let mut doc = fixture_text("ex1.2.3");
    doc["algebra"]["assert"]["invariant_ring_finite_gldim"] = true.into();
    doc.as_object_mut().unwrap().remove("expect");
    let p = scratch("false.json", &doc.to_string());
    let o = ncinv(&["check-bounds", p.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stdout).contains("VIOLATED (certified)"));
}

#[test]
fn golden_mismatch_exits_1() {
    let mut doc = fixture_text("sign-kx");
    doc["expect"]["beta"] = 3.into();
    let p = scratch("wrong.json", &doc.to_string());
    let o = ncinv(&["reproduce", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("MISMATCH beta"));
}

#[test]
fn every_command_runs_on_a_fixture() {
    for c in [
        "validate",
        "basis",
        "invariants",
        "beta",
        "tau",
        "hilbert-ideal",
        "annihilators",
        "resolve",
        "betti",
        "torreg",
        "cmreg",
        "series",
        "check-bounds",
    ] {
        let o = ncinv(&[c, "quasi-reflection"]);
        assert_eq!(code(&o), 0, "{c}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn schema_and_fixture_listing() {
    let s: serde_json::Value = serde_json::from_slice(&ncinv(&["schema"]).stdout).unwrap();
    assert_eq!(s["title"], "ncinv input document");
    let ids = String::from_utf8(ncinv(&["fixtures"]).stdout).unwrap();
    for id in ["ex1.2.3", "ex1.3", "ex3.4", "ex3.7"] {
        assert!(ids.lines().any(|l| l == id), "{id}");
    }
}
