use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn realflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realflow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classify_worked_graphs() {
    let o = realflow(&["classify", "--catalog", "A_hyp:1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("type: hyperbolic"), "{s}");
    assert!(s.contains("det: -2"));

    let s = stdout(&realflow(&["classify", "--catalog", "A_tilde:2"]));
    assert!(s.contains("type: affine"));
    assert!(s.contains("delta: [1, 1, 1]"));

    let s = stdout(&realflow(&["classify", "--catalog", "K:1"]));
    assert!(s.contains("type: finite"));
}

#[test]
fn classify_json_carries_schema_and_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = realflow(&["classify", "--catalog", "A_hyp:1", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["schema"], "realflow.report.v1");
    assert_eq!(v["config"]["catalog"], "A_hyp:1");
    assert_eq!(v["result"]["adjugate"], json!([[0, 2, 2], [2, 4, 4], [2, 4, 3]]));
    assert_eq!(v["result"]["classification"]["type"], "hyperbolic");
}

#[test]
fn graph_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let desc = json!({ "name": "tri", "vertices": 3, "edges": [[0, 1, 1], [1, 2, 1], [0, 2, 1]] });
    std::fs::write(&g, desc.to_string()).unwrap();
    let s = stdout(&realflow(&["classify", "--graph", g.to_str().unwrap()]));
    assert!(s.contains("type: affine"), "{s}");
}

#[test]
fn certify_bruhat_on_affine_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let o = realflow(&[
        "certify",
        "--catalog",
        "A_tilde:2",
        "--radius",
        "4",
        "--flow",
        "bruhat",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&out);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["config"]["certify"]["seed"], 0);
    assert_eq!(v["config"]["certify"]["samples"], 5);
    assert!(v["result"]["positivity"]["min_pairing"].as_f64().unwrap() > 0.0);
}

#[test]
fn certify_random_flow_without_flats() {
    let o = realflow(&["certify", "--catalog", "A_tilde:2,3", "--radius", "4", "--flow", "random:7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

/// Bruhat orientation everywhere except the wall between `s0` and `s0 s1`,
/// which turns the hexagon around the identity into one with two sources.
fn two_source_flow(dir: &Path) -> std::path::PathBuf {
    let region = dir.join("region.json");
    let o = realflow(&["region", "--catalog", "A_tilde:2", "--radius", "3", "--json", region.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = read_json(&region);
    let alcoves = r["result"]["alcoves"].as_array().unwrap();
    let entries: Vec<Value> = r["result"]["walls"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| {
            let word = &alcoves[w["alcove"].as_u64().unwrap() as usize];
            let flipped = *word == json!([0]) && w["gen"] == 1;
            json!({ "alcove": word, "gen": w["gen"], "above": !flipped })
        })
        .collect();
    let path = dir.join("flow.json");
    std::fs::write(&path, serde_json::to_string(&entries).unwrap()).unwrap();
    path
}

#[test]
fn certify_rejects_two_source_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let flow = two_source_flow(dir.path());
    let arg = format!("file:{}", flow.display());
    let o = realflow(&["certify", "--catalog", "A_tilde:2", "--radius", "3", "--flow", &arg]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    let line = err.lines().find_map(|l| l.strip_prefix("witness: ")).expect("witness line");
    let w: Value = serde_json::from_str(line).unwrap();
    assert_eq!(w["flat"]["base"], json!([]));
    assert_eq!(w["flat"]["pair"], json!([0, 1]));
    assert_eq!(w["flat"]["sources"], json!([0, 2]));
    assert_eq!(w["flat"]["sinks"], json!([1, 3]));
}

#[test]
fn contradictory_flow_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let entries = json!([
        { "alcove": [], "gen": 0, "above": true },
        { "alcove": [0], "gen": 0, "above": true },
    ]);
    std::fs::write(&path, entries.to_string()).unwrap();
    let arg = format!("file:{}", path.display());
    let o = realflow(&["certify", "--catalog", "A_tilde:2", "--radius", "2", "--flow", &arg]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn braid_table_rows() {
    let s = stdout(&realflow(&["braid-table", "--type", "A2"]));
    let rows: Vec<&str> = s.lines().filter(|l| l.trim_start().starts_with('(')).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().any(|r| r.trim() == "(++-) = (-++)"));
    assert!(!rows.iter().any(|r| r.trim() == "(+++) = (---)"));

    let s = stdout(&realflow(&["braid-table", "--type", "A1A1"]));
    assert_eq!(s.lines().filter(|l| l.trim_start().starts_with('(')).count(), 4);
}

#[test]
fn param_check_rank_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    let o = realflow(&["param-check", "--m", "3", "--trials", "100", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert!(v["result"]["max_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["config"]["seed"], 0);
}

#[test]
fn param_check_hyperbolic_graph() {
    let o = realflow(&["param-check", "--catalog", "A_hyp:1", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("hyperboloid identity"));
}

#[test]
fn region_count_matches_cayley_ball() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = realflow(&["region", "--catalog", "A_tilde:2", "--radius", "3", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // ball sizes of the affine A2 Weyl group: 1, 3, 6, 9
    let v = read_json(&out);
    assert_eq!(v["result"]["alcoves"].as_array().unwrap().len(), 19);
    assert_eq!(v["config"]["radius"], 3);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, name) in [("rank2", "K:3"), ("affine", "A_tilde:2"), ("hyperbolic", "A_hyp:1")] {
        let svg = dir.path().join(format!("{kind}.svg"));
        let o = realflow(&[
            "render",
            "--kind",
            kind,
            "--catalog",
            name,
            "--flow",
            "bruhat",
            "--svg",
            svg.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(std::fs::read_to_string(&svg).unwrap().contains("</svg>"));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(realflow(&["certify", "--catalog", "A_tilde:2", "--bogus"]).status.code(), Some(2));
    assert_eq!(realflow(&["certify"]).status.code(), Some(2));
    assert_eq!(realflow(&["classify", "--catalog", "Q:9"]).status.code(), Some(2));
    assert_eq!(realflow(&["certify", "--catalog", "K:1"]).status.code(), Some(2));
    assert_eq!(realflow(&["param-check", "--m", "1.5"]).status.code(), Some(2));
}
