//! End-to-end runs of the `autkit` binary: report shape, exit codes,
//! determinism, and the file-based round trips.

use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn autkit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autkit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .map(|c| {
            (
                c["check"].as_str().unwrap().to_string(),
                c["status"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn frucht_emits_graph_file_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = autkit(
        dir.path(),
        &["frucht", "--group", "S3", "--json", "--out", "s3.graph"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json_report(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["command"], "frucht");
    for (name, status) in statuses(&report) {
        assert_eq!(status, "exact-pass", "{name}");
    }
    let iso_check = &report["checks"][1];
    assert_eq!(iso_check["check"], "symmetry-group-isomorphic");
    assert_eq!(
        iso_check["witnesses"][0]["isomorphism"]
            .as_array()
            .unwrap()
            .len(),
        6
    );
    let graph = fs::read_to_string(dir.path().join("s3.graph")).unwrap();
    assert!(graph.starts_with("graph 42\n"), "{graph}");
}

#[test]
fn exaut_verify_example_passes_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = autkit(
        dir.path(),
        &["exaut", "verify", "--playground", "pureset:5", "--bound", "2", "--json"],
    );
    assert!(out.status.success());
    let report = json_report(&out);
    assert_eq!(report["playground"], "pure5");
    let listed = statuses(&report);
    assert!(listed.len() >= 8, "{listed:?}");
    for (name, status) in listed {
        assert!(status.ends_with("-pass"), "{name}: {status}");
    }
}

#[test]
fn identical_invocations_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["reconstruct", "demo", "--seed", "7", "--json"];
    let (a, b) = (autkit(dir.path(), &args), autkit(dir.path(), &args));
    assert!(a.status.success() && b.status.success());
    let (mut ra, mut rb) = (json_report(&a), json_report(&b));
    ra.as_object_mut().unwrap().remove("elapsed_ms");
    rb.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(
        serde_json::to_string(&ra).unwrap(),
        serde_json::to_string(&rb).unwrap()
    );
    // A different seed hides a different relabeling.
    let c = autkit(dir.path(), &["reconstruct", "demo", "--seed", "8", "--json"]);
    let rc = json_report(&c);
    assert_eq!(rc["parameters"]["seed"], 8);
    assert!(c.status.success());
}

#[test]
fn failed_verdicts_and_errors_gate_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    // D4 and Q8 share an order profile refinement step but differ.
    let out = autkit(dir.path(), &["group", "--group", "D4", "--iso", "Q8"]);
    assert_eq!(out.status.code(), Some(1));
    let out = autkit(dir.path(), &["group", "--group", "D4", "--iso", "d4"]);
    assert_eq!(out.status.code(), Some(0));

    // Unknown playground: an error report, not a panic.
    let out = autkit(dir.path(), &["struct", "--playground", "nowhere:9", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_report(&out);
    assert_eq!(statuses(&report)[0].1, "error");

    // Usage errors are clap's domain.
    let out = autkit(dir.path(), &["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reconstruct_run_reads_structures_and_generator_images() {
    let dir = tempfile::tempdir().unwrap();
    let edges = |shift: usize| -> String {
        let mut s = String::from("graph 5\n");
        for i in 0..5 {
            s.push_str(&format!("{} {}\n", (i + shift) % 5, (i + 1 + shift) % 5));
        }
        s
    };
    fs::write(dir.path().join("m.graph"), edges(0)).unwrap();
    fs::write(dir.path().join("n.graph"), edges(1)).unwrap();
    fs::write(
        dir.path().join("iso.txt"),
        "(0 1 2 3 4) -> (0 1 2 3 4)\n(1 4)(2 3) -> (0 2)(3 4)\n",
    )
    .unwrap();
    let out = autkit(
        dir.path(),
        &["reconstruct", "run", "--m", "m.graph", "--n", "n.graph", "--iso", "iso.txt", "--json"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let report = json_report(&out);
    let recovered = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == "bijection-recovered")
        .unwrap();
    assert_eq!(
        recovered["witnesses"][0]["images"],
        serde_json::json!([1, 2, 3, 4, 0])
    );
}

#[test]
fn explanations_ride_in_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let with = autkit(
        dir.path(),
        &["reconstruct", "sym6", "--explain", "--json"],
    );
    let report = json_report(&with);
    let text = report["explanation"].as_str().unwrap();
    assert!(text.contains("exceptional automorphism"));
    let without = autkit(dir.path(), &["reconstruct", "sym6", "--json"]);
    assert!(json_report(&without).get("explanation").is_none());
    // Text mode renders the same explanation.
    let rendered = autkit(dir.path(), &["reconstruct", "sym6", "--explain"]);
    assert!(String::from_utf8_lossy(&rendered.stdout).contains("exceptional automorphism"));
}

#[test]
fn outpipe_round_trips_a_cyclic_group() {
    let dir = tempfile::tempdir().unwrap();
    let out = autkit(dir.path(), &["outpipe", "--group", "Z3", "--json"]);
    assert!(out.status.success());
    let report = json_report(&out);
    assert_eq!(report["parameters"]["group"], "Z3");
    let last = report["checks"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["check"], "symmetry-group-matches-group");
    assert_eq!(last["status"], "exact-pass");
    assert!(last["witnesses"][0]["isomorphism"].is_array());
}

#[test]
fn group_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("v4.perm"),
        "degree 4\n(0 1)(2 3)\n(0 2)(1 3)\n",
    )
    .unwrap();
    let out = autkit(
        dir.path(),
        &["group", "--group", "v4.perm", "--iso", "V4", "--json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(statuses(&report)[1], ("isomorphic".into(), "exact-pass".into()));
}
