use std::process::{Command, Output};

use serde_json::Value;

fn helly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helly")).args(args).env_remove("HELLY_BUDGET_NODES").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const EXP2: &str = r#"{"kind":"exponential","alpha":"2","d":2}"#;

#[test]
fn verify_hyperbola_override() {
    let out = helly(&["verify", "thm2-hyperbola", "--alpha", "101/100", "--d", "2", "--k", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"], "pass");
    let ev = &r["checks"][0]["evidence"];
    assert_eq!(ev["vertices"], 11);
    assert_eq!(ev["empty"], true);
    assert_eq!(r["parameters"]["alpha"], "101/100");
}

#[test]
fn verify_mod3_and_cross() {
    assert_eq!(helly(&["verify", "prop-mod3"]).status.code(), Some(0));
    let out = helly(&["verify", "hol-cross", "--dmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_reports_are_reproducible() {
    let a = helly(&["verify", "width-simplex"]);
    let b = helly(&["verify", "width-simplex"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("wall_time_ms").is_none());
    let t = helly(&["verify", "width-simplex", "--timings"]);
    assert!(json(&t)["wall_time_ms"].is_u64());
}

#[test]
fn verify_csv() {
    let out = helly(&["verify", "seg-box", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,status"));
    assert_eq!(lines.next(), Some("seg-box,box counts and segments,pass"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(helly(&["verify", "no-such-suite"]).status.code(), Some(64));
    assert_eq!(helly(&["verify", "hol-cross", "--bogus", "1"]).status.code(), Some(64));
    assert_eq!(helly(&["verify", "hol-cross", "--dmax", "six"]).status.code(), Some(64));
    assert_eq!(helly(&["search", "--window", "0..3"]).status.code(), Some(64));
    assert_eq!(helly(&["search", "--lattice", "{\"kind\":\"nope\"}", "--window", "0..3"]).status.code(), Some(64));
    assert_eq!(helly(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(helly(&["construct", "hyperbola", "--d", "2"]).status.code(), Some(64));
    assert_eq!(helly(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_exponential() {
    let out = helly(&["search", "--lattice", EXP2, "--expwindow", "0..6", "--cap", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["max_empty_size"], 5);
    assert_eq!(r["exhaustive"], true);
    assert_eq!(r["witness"].as_array().unwrap().len(), 5);
}

#[test]
fn search_budget_exit_2() {
    let out = helly(&["search", "--lattice", EXP2, "--expwindow", "0..6", "--budget-nodes", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["wall_budget_hit"], true);
    assert_eq!(r["exhaustive"], false);

    let env = Command::new(env!("CARGO_BIN_EXE_helly"))
        .args(["search", "--lattice", EXP2, "--expwindow", "0..6"])
        .env("HELLY_BUDGET_NODES", "50")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
    assert_eq!(env.stdout, out.stdout);
}

#[test]
fn search_checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let ck = ck.to_str().unwrap();
    let args = ["search", "--lattice", r#"{"kind":"congruence","residues":[0,1],"modulus":3,"d":2}"#, "--window", "-1..5", "--checkpoint", ck];
    let first = helly(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(std::path::Path::new(ck).exists());
    let again = helly(&args);
    assert_eq!(first.stdout, again.stdout);
    let plain = helly(&args[..5]);
    assert_eq!(first.stdout, plain.stdout);
}

#[test]
fn search_workers_identical() {
    let a = helly(&["search", "--lattice", EXP2, "--expwindow", "0..6", "--workers", "1"]);
    let b = helly(&["search", "--lattice", EXP2, "--expwindow", "0..6", "--workers", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn construct_octagon() {
    let out = helly(&["construct", "mod3-octagon", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["dim"], 2);
    assert_eq!(r["vertices"].as_array().unwrap().len(), 8);
    assert!(String::from_utf8_lossy(&out.stderr).contains("pass empty"));
}

#[test]
fn construct_others() {
    let out = helly(&["construct", "hyperbola", "--alpha", "5/4", "--d", "3", "--k", "2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 6);
    let out = helly(&["construct", "fibonacci-syndetic", "--n", "6", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let out = helly(&["construct", "ball", "--k", "5", "--d", "2", "--verify"]);
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(helly(&["construct", "nonagon"]).status.code(), Some(64));
}

#[test]
fn analyze_ops() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("simplex2.json");
    std::fs::write(&f, r#"{"dim":2,"scalar":"rational","vertices":[["0","0"],["2","0"],["0","2"]]}"#).unwrap();
    let at = format!("@{}", f.display());

    let out = helly(&["analyze", "width", "--radius", "2", &at]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["width"], "2");

    let r = json(&helly(&["analyze", "hollow", &at]));
    assert_eq!(r["empty"], true);
    let r = json(&helly(&["analyze", "empty", &at]));
    assert_eq!(r["empty"], false);
    assert_eq!(r["witness"], serde_json::json!(["0", "1"]));
    let r = json(&helly(&["analyze", "segment", &at]));
    assert_eq!(r["length"], 2);
    let r = json(&helly(&["analyze", "dirwidth", "--direction", "1,-1", &at]));
    assert_eq!(r["width"], "4");
    let r = json(&helly(&["analyze", "reduce", "[[0,0],[2,0],[0,1]]"]));
    assert_eq!(r["polytope"]["vertices"], serde_json::json!([["0", "1"], ["1", "0"], ["2", "0"]]));

    let oct = r#"[[0,0],[1,0],[3,1],[6,3],[7,4],[6,4],[4,3],[1,1]]"#;
    let lat = r#"{"kind":"congruence","residues":[0,1],"modulus":3,"d":2}"#;
    let r = json(&helly(&["analyze", "empty", "--lattice", lat, oct]));
    assert_eq!(r["empty"], true);
    assert_eq!(helly(&["analyze", "empty", "--lattice", lat, "[[2,2]]"]).status.code(), Some(64));
    assert_eq!(helly(&["analyze", "volume", oct]).status.code(), Some(64));
}

#[test]
fn list_names_every_suite() {
    let r = json(&helly(&["list"]));
    let ids: Vec<&str> = r["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    for id in [
        "thm1-bound", "thm2-hyperbola", "fib-syndetic", "thm3-pigeonhole", "prop-mod3", "hol-cross",
        "hol-reduction", "seg-box", "seg-ball", "width-simplex", "explat-window",
    ] {
        assert!(ids.contains(&id), "{id}");
    }
}
