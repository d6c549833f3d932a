use std::process::{Command, Output};

use serde_json::Value;

fn sepdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepdim"))
        .args(args)
        .env_remove("SEPDIM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = sepdim(&all);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn solve_c5() {
    let o = sepdim(&["solve", "C:5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("pi_f = 5/3"), "{out}");
    assert!(out.contains("status: PASS"));
}

#[test]
fn solve_petersen_circular() {
    let v = json(&["solve", "petersen", "--mode", "circular"]);
    assert_eq!(v["result"]["solution"]["pi_f"], "8/7");
    assert_eq!(v["result"]["oracle_match"], true);
    assert_eq!(v["status"], "PASS");
}

#[test]
fn solve_k144_matches_lp() {
    let v = json(&["solve", "K:1,4,4"]);
    assert_eq!(v["result"]["solution"]["pi_f"], "48/19");
    assert_eq!(v["result"]["solution"]["certified"], true);
}

#[test]
fn solve_reductions_agree() {
    let a = json(&["solve", "K:2,2,2", "--reduction", "none"]);
    let b = json(&["solve", "K:2,2,2", "--reduction", "patterns"]);
    assert_eq!(a["result"]["solution"]["pi_f"], b["result"]["solution"]["pi_f"]);
}

#[test]
fn solve_edge_list_file() {
    let dir = std::env::temp_dir().join(format!("sepdim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c6.txt");
    std::fs::write(&path, "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
    let arg = format!("@{}", path.display());
    let v = json(&["solve", &arg]);
    assert_eq!(v["result"]["solution"]["pi_f"], "3/2");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suites_pass() {
    for suite in ["identities", "swaps", "strategies", "formulas"] {
        let v = json(&["verify", "--suite", suite]);
        assert_eq!(v["status"], "PASS", "{suite}");
    }
}

#[test]
fn verify_csv_has_header() {
    let o = sepdim(&["--csv", "verify", "--suite", "swaps"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("suite,item,status,detail"));
    assert!(lines.all(|l| l.starts_with("swaps,")));
}

fn argmax(v: &Value) -> Vec<(Vec<u64>, String)> {
    v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["argmax"] == true)
        .map(|r| {
            let parts = r["parts"].as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
            (parts, r["pi_f"].as_str().unwrap().to_string())
        })
        .collect()
}

#[test]
fn scan_bipartite_seven() {
    let v = json(&["scan", "--family", "bipartite", "--n", "7"]);
    assert_eq!(argmax(&v), vec![(vec![4, 3], "9/4".to_string())]);
}

#[test]
fn scan_tripartite_nine() {
    let v = json(&["scan", "--family", "tripartite", "--n", "9"]);
    let best = argmax(&v);
    assert_eq!(best.len(), 1);
    assert_eq!(best[0].0, vec![3, 3, 3]);
    assert_eq!(best[0].1, "18/7");
}

#[test]
fn tree_exact_subdivided_star() {
    let v = json(&["tree", "star-subdiv:4", "--exact"]);
    assert_eq!(v["result"]["min_probability"], "3/4");
    assert_eq!(v["result"]["bound"], "4/3");
}

#[test]
fn tree_monte_carlo_is_seeded() {
    let a = json(&["tree", "random-tree:12", "--seed", "5", "--samples", "2000"]);
    let b = json(&["tree", "random-tree:12", "--seed", "5", "--samples", "2000"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["monte_carlo"]["approximate"], true);
    assert_eq!(a["result"]["monte_carlo"]["property_failures"], 0);
    assert_eq!(a["status"], "PASS");
}

#[test]
fn json_is_reproducible() {
    let mut a = json(&["solve", "K:3,3", "--mode", "circular"]);
    let mut b = json(&["solve", "K:3,3", "--mode", "circular"]);
    a["timing_ms"] = Value::Null;
    b["timing_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn threads_flag_gives_same_answer() {
    let a = json(&["--threads", "1", "solve", "petersen"]);
    let b = json(&["--threads", "3", "solve", "petersen"]);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn bad_source_fails() {
    let o = sepdim(&["solve", "nonsense:3"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn raising_caps_needs_consent() {
    let o = sepdim(&["--max-linear", "12", "solve", "C:5"]);
    assert!(!o.status.success());
    let o = sepdim(&["--max-linear", "12", "--i-have-time", "solve", "C:5"]);
    assert!(o.status.success());
}

#[test]
fn over_cap_graph_is_an_error() {
    let o = sepdim(&["solve", "C:12"]);
    assert!(!o.status.success());
}
