use std::path::PathBuf;
use std::process::{Command, Output};

fn catalog(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/catalog")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgroupkit"))
        .args(args)
        .env_remove("CGROUPKIT_CATALOG")
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cgroupkit-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const BAD_MU: &str = r#"{"name":"bad","rank":2,"roots":[[1,-1],[-1,1]],"coroots":[[1,-1],[-1,1]],"simple":[0],"mu":[0,-2]}"#;

#[test]
fn lemma_json() {
    let out = run(&[
        "verify",
        "lemma1",
        &catalog("gsp4.datum"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pairing"], -3);
    assert_eq!(v["d"], 3);
    assert_eq!(v["scalar"], -1);
    assert_eq!(v["chi"], serde_json::json!([4, 2, -3]));
}

#[test]
fn dim_and_char() {
    let out = run(&["dim", &catalog("gsp6.datum"), "--format", "json"]);
    let v = json(&out);
    assert_eq!(
        (v["dim_freudenthal"].as_u64(), v["dim_weyl"].as_u64()),
        (Some(8), Some(8))
    );
    assert_eq!(v["weyl_group_order"], 48);
    let out = run(&["char", &catalog("gl2.datum"), "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn dual_is_self_dual_for_gl2() {
    let v = json(&run(&["dual", &catalog("gl2.datum"), "--format", "json"]));
    assert_eq!(v["name"], "gl2^");
    assert_eq!(v["roots"], serde_json::json!([[1, -1], [-1, 1]]));
    assert_eq!(v["coroots"], v["roots"]);
}

#[test]
fn cgroup_output() {
    let out = run(&["cgroup", &catalog("gl2.datum"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["cgroup"]["char_basis"],
        serde_json::json!([[1, 0, 1], [0, 1, 1], [0, 0, 2]])
    );
    assert_eq!(
        v["cgroup"]["kernel_generator"],
        serde_json::json!(["1/2", "-1/2", "1/2"])
    );
    assert_eq!(v["r_c"].as_array().unwrap().len(), 2);
}

#[test]
fn corollary_transcripts() {
    let args = [
        "verify",
        "corollary",
        &catalog("so25.datum"),
        "--trials",
        "12",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let v = json(&a);
    assert_eq!(v["transcripts"].as_array().unwrap().len(), 12);
    assert_eq!(v["failures"], 0);
    assert_eq!(a.stdout, run(&args).stdout);
}

#[test]
fn validate_reports_axiom_violation() {
    let dir = scratch("validate");
    let bad = dir.join("bad.datum");
    std::fs::write(&bad, BAD_MU).unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL mu"));
    assert_eq!(
        run(&["verify", "lemma1", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["validate", &catalog("gu21.datum")]).status.code(),
        Some(0)
    );
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["dim", "/nonexistent/x.datum"]).status.code(), Some(2));
    assert_eq!(
        run(&["report", "--catalog", "/nonexistent"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = scratch("parse");
    let f = dir.join("float.datum");
    std::fs::write(
        &f,
        r#"{"name":"x","rank":1,"roots":[],"coroots":[],"simple":[],"mu":[1.5]}"#,
    )
    .unwrap();
    let out = run(&["dim", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn report_from_env_catalog_isolates_failures() {
    let dir = scratch("catalog");
    std::fs::write(dir.join("bad.datum"), BAD_MU).unwrap();
    std::fs::copy(catalog("gl2.datum"), dir.join("gl2.datum")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cgroupkit"))
        .args(["report", "--trials", "5", "--format", "json"])
        .env("CGROUPKIT_CATALOG", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["name"], "bad");
    assert_eq!(entries[0]["passed"], false);
    assert_eq!(entries[1]["passed"], true);
}

#[test]
fn empty_catalog_passes() {
    let dir = scratch("empty");
    let out = run(&[
        "report",
        "--catalog",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["entries"], serde_json::json!([]));
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&run(&["report", "--trials", "3", "--format", "json"]));
    assert!(plain.get("elapsed_ms").is_none());
    let timed = json(&run(&[
        "report", "--trials", "3", "--format", "json", "--timing",
    ]));
    assert!(timed["elapsed_ms"].is_u64());
}
