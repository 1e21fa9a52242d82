use std::path::Path;
use std::process::{Command, Output};

fn hompoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hompoly"))
        .args(args)
        .env_remove("HOMPOLY_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let hom = dir.path().join("hom.json");
    let out = hompoly(&["construct", "cube:2", "simplex:3", "-o", path_str(&hom), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["inequalities"], 16);
    assert_eq!(json(&out)["dimension"], 9);

    let maps = dir.path().join("maps.json");
    let out = hompoly(&["vertices", path_str(&hom), "--ranks", "--json", "-o", path_str(&maps)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vertices"], 28);
    assert_eq!(v["ranks"]["0"], 4);
    assert_eq!(v["ranks"]["1"], 24);
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&maps).unwrap()).unwrap();
    assert_eq!(written.as_array().unwrap().len(), 28);
    assert_eq!(written[0]["is_vertex"], true);
}

#[test]
fn construct_reports_text() {
    let out = hompoly(&["construct", "cube:2", "simplex:2"]);
    assert_eq!(stdout(&out), "dimension 6\ninequalities 12\n");
    let out = hompoly(&["construct", "crosspolytope:3", "simplex:3"]);
    assert!(stdout(&out).contains("inequalities 24"));
}

#[test]
fn custom_polytope_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("tri.json");
    std::fs::write(&poly, r#"{"ambient_dim": 2, "vertices": [["0","0"],["2","0"],["0","1"]]}"#).unwrap();
    let spec = format!("file:{}", poly.display());
    let hom = dir.path().join("hom.json");
    let out = hompoly(&["construct", &spec, "cube:1", "-o", path_str(&hom), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["inequalities"], 6);
    let out = hompoly(&["vertices", path_str(&hom), "--json"]);
    // Hom(△_2, □_1) ≅ □_1^3
    assert_eq!(json(&out)["vertices"], 8);
}

#[test]
fn counts_and_numbers() {
    let out = hompoly(&["count", "box-simplex", "2", "3"]);
    assert!(stdout(&out).starts_with("box-simplex m=2 n=3: 28\n"));
    let out = hompoly(&["count", "diamond-diamond", "2", "2", "--enumerate", "--json"]);
    let v = json(&out);
    assert_eq!(v["closed_form"], 36);
    assert_eq!(v["enumerated"], 36);
    assert_eq!(v["agreement"], true);
    let out = hompoly(&["beta", "4"]);
    assert!(stdout(&out).starts_with("beta(4) = 5\n"));
    let out = hompoly(&["sigma", "4", "3", "--json"]);
    assert_eq!(json(&out)["sigma"], 576);
}

#[test]
fn table_rows() {
    let out = hompoly(&["table", "3", "4", "--seed", "7", "--json"]);
    let rows = json(&out);
    assert_eq!(rows[0]["perturbed"], 12);
    assert_eq!(rows[0]["bound"], 56);
    assert_eq!(rows[1]["perturbed"], 30);
    let text = stdout(&hompoly(&["table", "3", "4", "--seed", "7"]));
    assert!(text.lines().nth(1).unwrap().contains("21.43"));
}

#[test]
fn dual_and_intersect() {
    let out = hompoly(&["dual", "cube:3", "--json"]);
    let v = json(&out);
    assert_eq!(v["vertices"], 6);
    assert_eq!(v["facets"], 8);
    let out = hompoly(&["intersect", "crosspolytope:2", "crosspolytope:2", "--shift", "1,1", "--json"]);
    let v = json(&out);
    assert_eq!(v["vertices"], 2);
    assert_eq!(v["dimension"], 1);
    let out = hompoly(&["dual", "simplex:2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = hompoly(&["verify", "--claim", "box-simplex-rank", "--m", "3", "--n", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["status"], "pass");
    let out = hompoly(&["verify", "--claim", "vertex-count", "--source", "cube:2", "--target", "simplex:2", "--expected", "16"]);
    assert_eq!(out.status.code(), Some(1));
    let out = hompoly(&["verify", "--claim", "no-such-claim"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hompoly(&["verify", "--list"]);
    assert!(stdout(&out).contains("diamond-image-shape"));
}

#[test]
fn verify_core_suite_passes() {
    let out = hompoly(&["verify", "--suite", "core"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["construct", "foo:2", "cube:1"][..],
        &["construct", "cube:0", "cube:1"],
        &["vertices", "/nonexistent/hom.json"],
        &["count", "diamond-simplex", "6", "5"],
        &["table", "2", "4"],
        &["table", "3", "9"],
        &["beta", "6"],
        &["frobnicate"],
    ] {
        assert_eq!(hompoly(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_is_byte_identical() {
    for args in [
        &["count", "diamond-simplex", "3", "3", "--enumerate", "--json"][..],
        &["table", "3", "5", "--seed", "11", "--json"],
        &["verify", "--claim", "diamond-image-count", "--m", "4", "--n", "3", "--json"],
        &["intersect", "simplex:3", "crosspolytope:3", "--json"],
    ] {
        let a = hompoly(args).stdout;
        let b = hompoly(args).stdout;
        assert_eq!(a, b, "{args:?}");
        assert!(!a.is_empty());
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["count", "diamond-simplex", "4", "3", "--enumerate", "--json"];
    let one = Command::new(env!("CARGO_BIN_EXE_hompoly")).args(args).env("HOMPOLY_THREADS", "1").output().unwrap();
    let many = hompoly(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
