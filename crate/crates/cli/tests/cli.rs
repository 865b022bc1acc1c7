use std::process::{Command, Output};

use serde_json::Value;

const BS: &str = "<a, b | a b a^-1 = b^2>";

fn novikov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compute_reports_bs_torsion() {
    let v = json(&novikov(&["compute", "--pres", BS, "--xi", "a=1,b=0", "--torsion"]));
    let r = &v["results"][0];
    assert_eq!(r["betti"], serde_json::json!([0, 0, 0]));
    assert_eq!(r["torsion"]["plus"], serde_json::json!([0, 0, 0]));
    assert_eq!(r["torsion"]["minus"], serde_json::json!([0, 1, 0]));
    assert_eq!(r["torsion"]["carried_by"][0]["direction"], "minus");
}

#[test]
fn diagonalization_matches_minors() {
    let minors = json(&novikov(&["compute", "--pres", BS, "--xi", "a=1,b=0", "--torsion"]));
    let diag = json(&novikov(&[
        "compute",
        "--pres",
        BS,
        "--xi",
        "a=1,b=0",
        "--torsion",
        "--diagonalize",
    ]));
    assert_eq!(diag["results"][0]["torsion"]["method"], "diagonalization");
    assert_eq!(
        minors["results"][0]["torsion"]["minus"],
        diag["results"][0]["torsion"]["minus"]
    );
}

#[test]
fn certify_free_group() {
    let v = json(&novikov(&["certify", "--pres", "<a, b | >", "--xi", "a=1,b=0"]));
    assert_eq!(v["certificate"]["verdict"], "FREE_SUBGROUP_PRESENT");
    assert_eq!(v["witnesses_verified"], true);
}

#[test]
fn bad_input_exits_2() {
    let out = novikov(&["compute", "--pres", "<a | a^2 b>", "--xi", "a=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown generator"));
    assert!(out.stdout.is_empty());
}

#[test]
fn cap_hit_exits_3() {
    let out = novikov(&[
        "compute",
        "--pres",
        BS,
        "--xi",
        "a=1,b=0",
        "--torsion",
        "--minor-cap",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn echoed_complex_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&novikov(&["compute", "--pres", BS, "--xi", "a=1,b=0", "--echo"]));
    let path = dir.path().join("bs.json");
    std::fs::write(&path, v["results"][0]["boundaries"].to_string()).unwrap();
    let back = json(&novikov(&[
        "compute",
        "--complex",
        path.to_str().unwrap(),
        "--xi-given",
        "--torsion",
    ]));
    assert_eq!(back["results"][0]["betti"], v["results"][0]["betti"]);
    assert_eq!(back["results"][0]["torsion"]["minus"], serde_json::json!([0, 1, 0]));
}

#[test]
fn out_and_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let run = novikov(&[
        "compute",
        "--pres",
        BS,
        "--xi",
        "a=1,b=0",
        "--torsion",
        "--out",
        out.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["command"], "compute");
    // stdout carries the summary, not the report
    assert!(serde_json::from_slice::<Value>(&run.stdout).is_err());
    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("class,degree,betti,q_plus,q_minus"));
    assert!(lines.any(|l| l.ends_with(",1,0,0,1")), "{table}");
}

#[test]
fn job_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    let spec = serde_json::json!({
        "input": {"kind": "presentation", "text": BS},
        "classes": {"kind": "explicit", "classes": [["a=1,b=0"]]},
        "seed": 0,
        "options": {"torsion": true}
    });
    std::fs::write(&job, spec.to_string()).unwrap();
    let from_file = novikov(&["compute", "--job", job.to_str().unwrap()]);
    let from_flags = novikov(&["compute", "--pres", BS, "--xi", "a=1,b=0", "--torsion"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_flags.stdout);
}

#[test]
fn unknown_job_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(
        &job,
        r#"{"input": {"kind": "presentation", "text": "<a | >"}, "bogus": 1}"#,
    )
    .unwrap();
    assert_eq!(
        novikov(&["compute", "--job", job.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn sample_flags_the_jump_at_two() {
    let v = json(&novikov(&[
        "sample", "--pres", BS, "--xi", "a=1,b=0", "--point", "2", "--point", "1/2",
    ]));
    let points = &v["results"][0]["points"];
    assert_eq!(points[0]["dims"], serde_json::json!([0, 1, 1]));
    assert_eq!(points[0]["non_generic"], true);
    assert_eq!(points[1]["dims"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["results"][0]["agrees_with_betti"], true);
}

#[test]
fn sample_without_class_fails() {
    let out = novikov(&["sample", "--pres", BS]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = novikov(&["--selftest"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("ok")).count(), 6, "{text}");
}
