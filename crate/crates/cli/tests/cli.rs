use std::process::{Command, Output};

use hooktree::tree::forest_from_structured;
use hooktree::PlaneTree;

fn hooktree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hooktree")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    stdout(out).lines().map(str::to_string).collect()
}

#[test]
fn count_rows() {
    let out = hooktree(&["count", "--family", "km", "--k", "3", "--m", "2", "--n", "0..3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,3,21,190\n");
    assert_eq!(stdout(&hooktree(&["count", "--family", "catalan", "--n", "3"])), "5\n");
    assert_eq!(stdout(&hooktree(&["count", "--family", "mary", "--m", "1", "--n", "9"])), "1\n");
}

#[test]
fn count_json_uses_strings() {
    let out = hooktree(&["count", "--family", "catalan", "--n", "30..30", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["n"], 30);
    assert_eq!(v[0]["count"], "3814986502092304");
}

#[test]
fn enumerate_line_counts() {
    let out = hooktree(&["enumerate", "--family", "mary", "--m", "2", "--n", "3"]);
    assert_eq!(lines(&out).len(), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("count: 5"));
    assert_eq!(lines(&hooktree(&["enumerate", "--family", "forest", "--n", "0"])), vec!["[]"]);
    assert_eq!(lines(&hooktree(&["enumerate", "--family", "km", "--k", "2", "--m", "1", "--n", "2"])).len(), 5);
}

#[test]
fn enumerate_output_round_trips() {
    for line in lines(&hooktree(&["enumerate", "--family", "km", "--k", "2", "--m", "2", "--n", "2"])) {
        let t: PlaneTree = line.parse().unwrap();
        assert_eq!(t.km_order(2, 2), Some(2));
    }
    let json = hooktree(&["enumerate", "--family", "km", "--k", "3", "--m", "1", "--n", "2", "--format", "json"]);
    let trees = lines(&json);
    assert_eq!(trees.len(), 12);
    for line in trees {
        assert_eq!(PlaneTree::from_structured(&line).unwrap().km_order(3, 1), Some(2));
    }
    for line in lines(&hooktree(&["enumerate", "--family", "forest", "--n", "4", "--format", "json"])) {
        let f = forest_from_structured(&line).unwrap();
        assert_eq!(f.iter().map(PlaneTree::vertex_count).sum::<usize>(), 4);
    }
}

#[test]
fn hookpoly_outputs() {
    let out = hooktree(&["hookpoly", "--family", "mary", "--m", "2", "--n", "3", "--method", "closed"]);
    assert_eq!(stdout(&out), "[0, 1/3, -2, 8/3]\n");
    for method in ["enum", "recur", "closed"] {
        let out = hooktree(&["hookpoly", "--family", "forest", "--n", "2", "--method", method, "--format", "json"]);
        assert_eq!(stdout(&out), "[\"0\",\"-1/2\",\"5/2\"]\n");
    }
    assert_eq!(stdout(&hooktree(&["hookpoly", "--family", "forest", "--n", "0"])), "[1]\n");
}

#[test]
fn verify_exit_codes() {
    let out = hooktree(&["verify", "--identity", "postnikov", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("pass  postnikov"));
    assert_eq!(hooktree(&["verify", "--identity", "ternary-equals-forest", "--max-n", "6"]).status.code(), Some(0));
    let km = ["verify", "--identity", "km-count", "--k", "3", "--m", "2", "--max-n", "3"];
    assert_eq!(hooktree(&km).status.code(), Some(0));
    assert_eq!(hooktree(&["verify", "--identity", "bogus"]).status.code(), Some(2));
    let capped = hooktree(&["verify", "--identity", "km-count", "--k", "3", "--m", "3", "--n", "3", "--cap", "10"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let out = hooktree(&["verify", "--identity", "split-roundtrip", "--k", "1..2", "--m", "2", "--n", "0,2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["identity"], "split-roundtrip");
    assert_eq!(v["failed"], 0);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 4);
    assert!(cells.iter().all(|c| c["status"] == "pass" && c.get("witnesses").is_none()));
    assert_eq!(cells[0]["params"], serde_json::json!({ "k": 1, "m": 2, "n": 0 }));
}

#[test]
fn series_and_ode() {
    assert_eq!(stdout(&hooktree(&["series", "--k", "1", "--m", "2", "--order", "5"])), "1,1,2,5,14,42\n");
    assert_eq!(stdout(&hooktree(&["series", "--k", "1", "--m", "1", "--order", "4"])), "1,1,1,1,1\n");
    let ode = hooktree(&["ode", "--k", "2", "--order", "20"]);
    assert_eq!(ode.status.code(), Some(0));
    assert_eq!(stdout(&ode), "pass\n");
}

#[test]
fn split_trace() {
    let out = hooktree(&["split", "--k", "2", "--m", "2", "--tree", "(((()())(()()))())", "--mark", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ordered"], serde_json::json!([[[], []], [[], []]]));
    assert_eq!(v["last"]["tree"], serde_json::json!([[], []]));
    assert_eq!(v["last"]["mark"], 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hooktree(&["count", "--family", "km", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hooktree(&["count", "--family", "nope", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hooktree(&["count", "--family", "catalan", "--n", "3..1"]).status.code(), Some(2));
    assert_eq!(hooktree(&["enumerate", "--family", "mary", "--m", "2", "--n", "12", "--cap", "100"]).status.code(), Some(2));
    assert_eq!(hooktree(&["series", "--k", "1", "--m", "2", "--order", "3", "--format", "paren"]).status.code(), Some(2));
    assert_eq!(hooktree(&["split", "--k", "2", "--m", "2", "--tree", "(()())", "--mark", "0"]).status.code(), Some(2));
}
