//! Black-box tests of the installed binary: determinism of the seeded
//! verbs, report invariants visible through each output format, and
//! the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn intlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intlin"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be utf-8")
}

fn tmp_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("intlin-cli-test-{tag}-{}.json", std::process::id()))
}

#[test]
fn gen_is_deterministic_across_runs() {
    let args = ["gen", "--n", "4", "--delta", "0.05", "--seed", "9", "--count", "2"];
    let first = intlin(&args);
    let second = intlin(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn bench_csv_repeats_except_wall_times() {
    let args = [
        "bench", "--n", "5", "--delta", "0.1,0.01", "--seed", "3", "--count", "3", "--format",
        "csv",
    ];
    let first = intlin(&args);
    let second = intlin(&args);
    assert!(first.status.success());

    // column 3 is the wall time; everything else must repeat bit for bit
    let strip = |s: &str| {
        s.lines()
            .map(|line| {
                let mut f: Vec<&str> = line.split(',').collect();
                f.remove(3);
                f.join(",")
            })
            .collect::<Vec<_>>()
    };
    let a = stdout(&first);
    let b = stdout(&second);
    assert_eq!(strip(&a), strip(&b));

    // per-instance containment makes the mean tightness ordering exact
    // for any instance count
    let mut header = true;
    let mut tightness = std::collections::HashMap::new();
    for line in a.lines() {
        if header {
            assert_eq!(line, "n,delta,method,mean_time_s,mean_tightness,failures");
            header = false;
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        let t: f64 = f[4].parse().expect("mean tightness should be numeric");
        *tightness.entry(f[2].to_string()).or_insert(0.0) += t;
    }
    assert!(tightness["magnitude"] <= tightness["gs_limit"]);
    assert!(tightness["gs_limit"] <= tightness["krawczyk_limit"]);
    assert!(tightness["nk_hull"] <= tightness["magnitude"]);
}

#[test]
fn solve_reports_every_method_against_the_hull() {
    let file = tmp_path("solve");
    let path = file.to_str().unwrap();
    let gen = intlin(&[
        "gen", "--n", "4", "--delta", "0.05", "--seed", "17", "--count", "2", "--out", path,
    ]);
    assert!(gen.status.success());

    let solved = intlin(&["solve", path, "--format", "json"]);
    assert!(solved.status.success());
    let reports: serde_json::Value = serde_json::from_str(&stdout(&solved)).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 2);

    for report in reports {
        let results = report["results"].as_array().unwrap();
        let methods: Vec<&str> = results
            .iter()
            .map(|r| r["method"].as_str().unwrap())
            .collect();
        assert_eq!(
            methods,
            ["krawczyk_limit", "gs_iterative", "gs_limit", "magnitude", "nk_hull"]
        );
        for r in results {
            assert_eq!(r["enclosure"].as_array().unwrap().len(), 4);
            let t = r["tightness"].as_f64().expect("tightness should be present");
            assert!(t >= 1.0 - 1e-9, "tightness below optimal: {t}");
            if r["method"] == "nk_hull" {
                assert!((t - 1.0).abs() <= 1e-9, "hull not its own baseline: {t}");
            }
            if r["method"] == "gs_iterative" {
                assert!(r["iterations"].as_u64().unwrap() >= 1);
            }
        }
    }
    std::fs::remove_file(&file).ok();
}

#[test]
fn check_finds_no_escapes() {
    let out = intlin(&[
        "check", "--n", "4", "--delta", "0.05", "--seed", "11", "--count", "5",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 escapes"), "{}", stdout(&out));
}

#[test]
fn bench_with_zero_instances_prints_no_rows() {
    for format in ["table", "csv"] {
        let out = intlin(&[
            "bench", "--n", "5", "--delta", "0.1", "--count", "0", "--format", format,
        ]);
        assert!(out.status.success());
        assert!(!stdout(&out).contains("magnitude"));
    }
}

#[test]
fn exit_codes_separate_usage_verification_and_io() {
    assert_eq!(intlin(&["--help"]).status.code(), Some(0));
    assert_eq!(intlin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        intlin(&["gen", "--n", "4", "--delta=-1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        intlin(&["solve", "/nonexistent/missing.json"]).status.code(),
        Some(3)
    );

    // a singular midpoint cannot be preconditioned, let alone certified
    let file = tmp_path("singular");
    std::fs::write(
        &file,
        r#"{"n":2,"A":[[["1","1"],["1","1"]],[["1","1"],["1","1"]]],"b":[["1","1"],["1","1"]]}"#,
    )
    .unwrap();
    assert_eq!(
        intlin(&["solve", file.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_file(&file).ok();
}
