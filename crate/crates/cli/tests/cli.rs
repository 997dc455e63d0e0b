use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    root.join(rel).to_str().unwrap().to_string()
}

fn smfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smfc"))
        .args(args)
        .env_remove("SMFC_SIZE_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn value_re(v: &Value) -> f64 {
    v["value"][0].as_f64().unwrap()
}

#[test]
fn invariant_of_fibonacci_on_two_tet_sphere() {
    let out = smfc(&["invariant", "--category", &data("fibonacci.json"), "--manifold", "s3_two_tets"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((value_re(&v) - 0.276_393_202_250_021).abs() < 1e-9);
    assert!(v["seconds"].is_number());
    assert!(v["colorings"]["visited"].as_u64().unwrap() > 0);
}

#[test]
fn quiet_prints_only_the_value() {
    let out = smfc(&["--quiet", "invariant", "--category", &data("ising.json"), "--manifold", "s3_two_tets"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let v: f64 = text.trim().parse().expect("a bare number");
    assert!((v - 0.25).abs() < 1e-12);
}

#[test]
fn corrupted_category_fails_pentagon() {
    let out = smfc(&["validate-category", &data("fibonacci_corrupted.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let pentagon = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "pentagon").unwrap();
    assert_eq!(pentagon["passed"], false);
}

#[test]
fn shipped_categories_validate() {
    for f in ["fibonacci.json", "ising.json"] {
        let out = smfc(&["validate-category", &data(f)]);
        assert_eq!(out.status.code(), Some(0), "{f}");
    }
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"format":"smfc-category/1","labels":[{"name":"1","dim":"x"}]}"#).unwrap();
    let wrong_version = dir.path().join("v2.json");
    std::fs::write(&wrong_version, r#"{"format":"smfc-category/2"}"#).unwrap();
    let bad = bad.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["validate-category", bad],
        vec!["validate-category", wrong_version.to_str().unwrap()],
        vec!["validate-category", "/nonexistent/cat.json"],
        vec!["invariant", "--category", bad, "--manifold", "s3_two_tets"],
        vec!["invariant", "--category", "/nonexistent.json", "--manifold", "s3_two_tets"],
        vec!["validate-complex", "no_such_manifold"],
        vec!["validate-complex", "surface_times_circle:s2:2"],
        vec!["build", "graded-lift"],
        vec!["build", "matrix"],
        vec!["frobnicate"],
    ];
    for args in cases {
        assert_eq!(smfc(&args).status.code(), Some(2), "{args:?}");
    }
    let out = smfc(&["build", "graded-lift", "--input", &data("ising_bad_grading.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn open_complex_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lone.json");
    std::fs::write(
        &path,
        r#"{"format":"smfc-triangulation/1","vertices":4,"tetra_list":[{"vertices":[0,1,2,3],"sign":1}]}"#,
    )
    .unwrap();
    let out = smfc(&["validate-complex", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
}

#[test]
fn builtin_complexes_validate() {
    for name in ["s3_two_tets", "s3_boundary_4simplex", "t3_one_vertex", "s2xs1"] {
        let out = smfc(&["validate-complex", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn graded_lift_invariant_on_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let lift = dir.path().join("lift.json");
    let out = smfc(&["build", "graded-lift", "--input", &data("ising_z2_graded.json"), "-o", lift.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = smfc(&["invariant", "--category", lift.to_str().unwrap(), "--manifold", "s3_two_tets"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((value_re(&json(&out)) - 0.5).abs() < 1e-9);
}

#[test]
fn builds_round_trip_through_validation() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("matrix", vec!["--n".into(), "3".into()]),
        ("gcg", vec!["--input".into(), data("gcg/gcg_z2_z2_lambda.json")]),
        ("gcg", vec!["--input".into(), data("gcg/gcg_z2_z3_neg.json")]),
        ("dw", vec!["--input".into(), data("gcg/dw_z2_twisted.json")]),
        ("graded-lift", vec!["--input".into(), data("ising_z2_graded.json")]),
    ];
    for (i, (kind, extra)) in cases.into_iter().enumerate() {
        let path = dir.path().join(format!("c{i}.json"));
        let mut args = vec!["build", kind];
        args.extend(extra.iter().map(String::as_str));
        args.extend(["-o", path.to_str().unwrap()]);
        assert_eq!(smfc(&args).status.code(), Some(0), "{kind}");
        let out = smfc(&["validate-category", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{kind}");
        assert_eq!(json(&out)["dims"]["special"], true);
    }
}

#[test]
fn dw_build_rejects_nontrivial_abelian_part() {
    let out = smfc(&["build", "dw", "--input", &data("gcg/gcg_z2_z2.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pachner_fuzz_logs_equal_values() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("dw.json");
    smfc(&["build", "dw", "--input", &data("gcg/dw_z2.json"), "-o", cat.to_str().unwrap()]);
    let out = smfc(&[
        "pachner-fuzz", "--category", cat.to_str().unwrap(), "--category", &data("fibonacci.json"),
        "--manifold", "t3_one_vertex", "--moves", "10", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    for cat in v["categories"].as_array().unwrap() {
        let log = cat["log"].as_array().unwrap();
        assert_eq!(log.len(), 11);
        let first = value_re(&log[0]);
        for entry in log {
            assert!((value_re(entry) - first).abs() <= 1e-6 * first.abs().max(1.0));
        }
    }
}

#[test]
fn reports_are_reproducible_apart_from_timing() {
    let args = ["pachner-fuzz", "--category", &data("ising.json"), "--manifold", "s3_two_tets", "--moves", "6", "--seed", "42"];
    let a = smfc(&args);
    let b = smfc(&args);
    assert_eq!(a.stdout, b.stdout);

    let strip = |out: &Output| {
        let mut v = json(out);
        v.as_object_mut().unwrap().remove("seconds");
        v
    };
    let inv = ["invariant", "--category", &data("fibonacci.json"), "--manifold", "s3_boundary_4simplex"];
    assert_eq!(strip(&smfc(&inv)), strip(&smfc(&inv)));
}

#[test]
fn oracle_matches_known_counts() {
    for (file, manifold, expect) in [
        ("gcg/dw_z2.json", "t3_one_vertex", "4"),
        ("gcg/dw_z3.json", "t3_one_vertex", "9"),
        ("gcg/dw_z2.json", "s3_two_tets", "1/2"),
    ] {
        let out = smfc(&["oracle", "--group", &data(file), "--manifold", manifold]);
        assert_eq!(out.status.code(), Some(0), "{file} {manifold}");
        let v = json(&out);
        assert_eq!(v["oracle"], expect);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn size_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_smfc"))
        .args(["invariant", "--category", &data("fibonacci.json"), "--manifold", "t3_one_vertex"])
        .env("SMFC_SIZE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size guard"));
}

#[test]
fn census_lists_builtins() {
    let out = smfc(&["census", "--category", &data("ising.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["manifolds"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let t3 = rows.iter().find(|r| r["name"] == "t3_one_vertex").unwrap();
    assert_eq!(t3["euler_characteristic"], 0);
    assert_eq!(t3["counts"], serde_json::json!([1, 7, 12, 6]));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = smfc(&["invariant", "--category", &data("fibonacci.json"), "--manifold", "empty", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"][0].as_f64().unwrap(), 1.0);
}
