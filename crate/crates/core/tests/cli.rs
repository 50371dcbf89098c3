use std::path::Path;
use std::process::{Command, Output};

fn anglevec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anglevec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const TRIANGLE: &str = r#"{"dim": 2, "vertices": [["2","0"],["-1","2"],["-1","-2"]]}"#;
const TRIANGLE_ANGLE: &str = r#"{"type":"point_masses","atoms":[
  {"ray":["-2","0"],"weight":"1/4"},{"ray":["1","-2"],"weight":"1/4"},{"ray":["1","2"],"weight":"1/4"},
  {"ray":["2","0"],"weight":"1/12"},{"ray":["-1","2"],"weight":"1/12"},{"ray":["-1","-2"],"weight":"1/12"}]}"#;

#[test]
fn example_triangle() {
    let o = anglevec(&["example", "--name", "triangle"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("gamma_hat            = (0, 3/4, 1)"));
}

#[test]
fn example_nonunimodal6() {
    let o = anglevec(&["example", "--name", "nonunimodal6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("(0, 0, 4, 5, 4, 6, 2)"));
    assert!(out.contains("not unimodal"));
}

#[test]
fn unknown_example() {
    let o = anglevec(&["example", "--name", "nope"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("E_UNKNOWN_EXAMPLE"));
}

#[test]
fn verify_ds_passes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", TRIANGLE);
    let a = write(dir.path(), "a.json", TRIANGLE_ANGLE);
    let o = anglevec(&["verify", "--polytope", &p, "--angle", &a, "--checks", "ds"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("ds"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(anglevec(&[]).status.code(), Some(2));
    assert_eq!(anglevec(&["frobnicate"]).status.code(), Some(2));
    let o = anglevec(&["example", "--name", "triangle", "--format", "xml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E_USAGE"));
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", TRIANGLE);
    let a = write(dir.path(), "a.json", TRIANGLE_ANGLE);
    let o = anglevec(&["verify", "--polytope", &p, "--angle", &a, "--checks", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_inputs_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", TRIANGLE_ANGLE);
    let cases = [
        (r#"{"dim": 2, "vertices": [["0","0"],["1","1"],["2","2"]]}"#, "E_POLYTOPE"),
        (r#"{"dim": 2, "vertices": [["1/0","0"]]}"#, "E_PARSE"),
        ("not json", "E_PARSE"),
    ];
    for (body, code) in cases {
        let p = write(dir.path(), "bad.json", body);
        let o = anglevec(&["analyze", "--polytope", &p, "--angle", &a]);
        assert_eq!(o.status.code(), Some(3), "{body}");
        assert!(stderr(&o).contains(code), "{body}: {}", stderr(&o));
    }
    let p = write(dir.path(), "t.json", TRIANGLE);
    let boundary = write(
        dir.path(),
        "b.json",
        r#"{"type":"point_masses","atoms":[{"ray":["0","1"],"weight":"1"}]}"#,
    );
    let o = anglevec(&["analyze", "--polytope", &p, "--angle", &boundary]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("E_BOUNDARY_RAY"));
    let missing = dir.path().join("missing.json");
    let o = anglevec(&["analyze", "--polytope", missing.to_str().unwrap(), "--angle", &a]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn analyze_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", TRIANGLE);
    let a = write(dir.path(), "a.json", TRIANGLE_ANGLE);
    let out = dir.path().join("report.json");
    let o = anglevec(&[
        "analyze",
        "--polytope",
        &p,
        "--angle",
        &a,
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let report: anglevec::anglevec::AnalysisReport = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    assert_eq!(report.gamma_hat.unwrap().to_string(), "(0, 3/4, 1)");
}

#[test]
fn analyze_text_labels_indices() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", TRIANGLE);
    let a = write(dir.path(), "a.json", TRIANGLE_ANGLE);
    let o = anglevec(&["analyze", "--polytope", &p, "--angle", &a]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("f[-1]=1 f[0]=3 f[1]=3"));
    assert!(out.contains("gamma[0]=0 gamma[1]=3/4 gamma[2]=1"));
    assert!(out.contains("alpha[-1]=0"));
}

#[test]
fn regions_listing() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", TRIANGLE);
    let o = anglevec(&["regions", "--polytope", &p, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["regions"].as_array().unwrap().len(), 6);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 3);
}

#[test]
fn region_weights_model() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", TRIANGLE);
    let o = anglevec(&["regions", "--polytope", &p, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let signs: Vec<String> = v["regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["signs"].as_str().unwrap().to_string())
        .collect();
    let body: Vec<String> = signs.iter().map(|s| format!("\"{s}\":\"1/6\"")).collect();
    let a = write(
        dir.path(),
        "w.json",
        &format!("{{\"type\":\"region_weights\",\"weights\":{{{}}}}}", body.join(",")),
    );
    let o = anglevec(&["verify", "--polytope", &p, "--angle", &a]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let partial = write(
        dir.path(),
        "partial.json",
        &format!("{{\"type\":\"region_weights\",\"weights\":{{\"{}\":\"1\"}}}}", signs[0]),
    );
    let o = anglevec(&["verify", "--polytope", &p, "--angle", &partial]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("E_REGION"));
}

#[test]
fn monte_carlo_seed_override_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t.json", TRIANGLE);
    let a = write(dir.path(), "mc.json", r#"{"type":"spherical_mc","samples":20000,"seed":1}"#);
    let run = |seed: &str| stdout(&anglevec(&["analyze", "--polytope", &p, "--angle", &a, "--seed", seed]));
    assert_eq!(run("9"), run("9"));
    assert_ne!(run("9"), run("10"));
}

#[test]
fn search_modes() {
    let o = anglevec(&["search", "--mode", "one-dark-facet", "--dim", "3", "--seed", "2", "--max-iter", "500"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("one-dark-facet region"));
    let o = anglevec(&["search", "--mode", "one-dark-facet", "--dim", "3", "--max-iter", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("E_NOT_FOUND"));
    let o = anglevec(&["search", "--instances", "6", "--dim", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["instances"], 6);
}
