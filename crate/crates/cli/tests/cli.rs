use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

use quditbell::formats::{format_phases, format_strategy, parse_phases, parse_strategy};
use quditbell_core::quantum::MultiportPhases;
use quditbell_core::{DeterministicStrategy, GameParams};

fn quditbell(args: &[&str], workers: usize) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quditbell"))
        .args(args)
        .env("QUDITBELL_WORKERS", workers.to_string())
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_seconds(mut v: Value) -> Value {
    if let Some(m) = v.as_object_mut() {
        m.remove("seconds");
    }
    v
}

#[test]
fn exact_bound_for_small_d() {
    let v = json(&quditbell(&["bounds", "--d", "4", "--exact"], 1));
    assert_eq!(v["value"], 10);
    assert_eq!(v["complete"], true);
}

#[test]
fn heuristic_is_worker_independent() {
    let args = ["bounds", "--d", "11", "--heuristic", "--restarts", "300", "--seed", "4"];
    let a = without_seconds(json(&quditbell(&args, 1)));
    let b = without_seconds(json(&quditbell(&args, 3)));
    assert_eq!(a, b);
    assert!(a["value"].as_u64().unwrap() >= 31);
}

#[test]
fn seesaw_is_worker_independent() {
    let args = ["quantum", "--d", "3", "--mode", "seesaw", "--restarts", "3", "--seed", "2"];
    let a = without_seconds(json(&quditbell(&args, 1)));
    let b = without_seconds(json(&quditbell(&args, 2)));
    assert_eq!(a, b);
}

#[test]
fn shipped_fixtures_verify() {
    for set in ["witnesses", "zero-free"] {
        let out = quditbell(&["verify", "--fixtures", set], 1);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn csv_output_and_file_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    std::fs::write(&path, "d=7\noa=0,0,0,0,1,2,5\nob=0,0,5,1,6,0,3\n").unwrap();
    let out = quditbell(&["verify", "--file", path.to_str().unwrap(), "--out", "csv"], 1);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("name,d,zeros"));
    assert!(text.lines().nth(1).unwrap().contains(",7,19,"));
}

#[test]
fn bad_input_exits_with_error_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "d=5\noa=0,1\n").unwrap();
    assert_eq!(quditbell(&["verify", "--file", path.to_str().unwrap()], 1).status.code(), Some(2));
    assert_eq!(quditbell(&["bounds", "--d", "14", "--exact"], 1).status.code(), Some(2));
}

fn strategy() -> impl Strategy<Value = DeterministicStrategy> {
    (2usize..=16).prop_flat_map(|d| {
        (proptest::collection::vec(0..d as u8, d), proptest::collection::vec(0..d as u8, d))
            .prop_map(move |(a, b)| DeterministicStrategy::new(&GameParams::new(d).unwrap(), a, b).unwrap())
    })
}

proptest! {
    #[test]
    fn strategy_files_round_trip(s in strategy()) {
        let back = parse_strategy(&format_strategy(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn phase_files_round_trip(d in 2usize..=9, raw in proptest::collection::vec(0.0f64..1.0, 81)) {
        let rows = (0..d).map(|s| raw[s * (d - 1)..(s + 1) * (d - 1)].to_vec()).collect();
        let phases = MultiportPhases::new(d, rows).unwrap();
        let back = parse_phases(&format_phases(&phases)).unwrap();
        for (r, q) in back.rows().iter().zip(phases.rows()) {
            for (x, y) in r.iter().zip(q) {
                let gap = (x - y).abs();
                prop_assert!(gap.min(1.0 - gap) < 1e-11);
            }
        }
    }
}
