use serde_json::Value;
use std::process::{Command, Output};

fn kgroth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgroth"))
        .args(args)
        .env_remove("KGROTH_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn non_vexillary_non_dominant_o_is_uncomputable() {
    let out = kgroth(&["compute", "o", "--inv", "2,1,4,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("status: uncomputable"));
}

#[test]
fn sp_table_suite_passes() {
    let out = kgroth(&["verify", "--suite", "sp-table-i4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert_eq!(text.matches("PASS").count(), 13);
}

#[test]
fn unknown_suite_is_an_error() {
    let out = kgroth(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "compute", "sp", "--inv", "4,3,2,1"];
    let a = kgroth(&args);
    let b = kgroth(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "json", "verify", "--suite", "o-table-i3"];
    assert_eq!(kgroth(&args).stdout, kgroth(&args).stdout);
}

#[test]
fn json_polynomial_round_trips() {
    let out = kgroth(&["--format", "json", "compute", "o", "--inv", "3,2,1"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema"], "kgroth.report/1");
    assert_eq!(report["status"], "ok");
    let item = report["items"]
        .as_array()
        .unwrap()
        .iter()
        .find(|i| i["kind"] == "poly")
        .expect("a polynomial item");
    let poly = kgroth::poly::from_json(&item["poly"]).unwrap();
    assert_eq!(kgroth::poly::to_json(&poly), item["poly"]);
    assert_eq!(poly.term_count(), 5);
}

#[test]
fn latex_output_factors_dominant_o() {
    let out = kgroth(&["--format", "latex", "compute", "o", "--inv", "3,4,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r"(x_{1} \oplus x_{1})"));
}

#[test]
fn cache_directory_is_reused() {
    let dir = std::env::temp_dir().join(format!("kgroth-cli-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_kgroth"))
            .args(["compute", "typeA", "--perm", "1,4,3,2"])
            .env("KGROTH_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    assert_eq!(first.stdout, run().stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn positivity_finding_exit_code() {
    let out = kgroth(&[
        "expand",
        "--target",
        "GQ:1*GQ:1",
        "--basis",
        "GQ",
        "--maxdeg",
        "4",
        "--vars",
        "4",
        "--report-positivity",
    ]);
    // The expansion reaches the degree cap, so it is flagged.
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("GQ_(2): 2"));
}

#[test]
fn suite_list_names_every_suite() {
    let out = kgroth(&["verify", "--suite", "list"]);
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("suite: "))
            .count(),
        15
    );
}
