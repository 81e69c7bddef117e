use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const FIXTURES: &[&str] = &[
    "A_n",
    "Kronecker",
    "E1",
    "E2",
    "S1",
    "S2",
    "Lambda",
    "Torus",
];

fn gentle(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gentle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn gentle");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(name: &str, extra: &[&str]) -> String {
    let mut args = vec!["example", name];
    args.extend_from_slice(extra);
    let o = gentle(&args, None);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn every_fixture_round_trips_through_analyze() {
    for name in FIXTURES {
        let doc = example(name, &[]);
        let o = gentle(&["analyze", "-", "--json"], Some(&doc));
        assert_eq!(
            o.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let r = json(&o);
        assert!(r["input_digest"].as_str().unwrap().starts_with("sha256:"));
        for key in ["validation", "words", "surface", "decisions", "versions"] {
            assert!(!r[key].is_null(), "{name}: missing {key}");
        }
    }
}

#[test]
fn e1_analysis() {
    let doc = example("E1", &[]);
    let r = json(&gentle(&["analyze", "-", "--json"], Some(&doc)));
    assert_eq!(r["surface"]["genus"], 0);
    assert_eq!(r["surface"]["boundaries"].as_array().unwrap().len(), 3);
    assert_eq!(r["decisions"]["silting_discrete"], "Yes");
}

#[test]
fn s1_has_minimal_band_certificate() {
    let doc = example("S1", &["--n", "2"]);
    let o = gentle(&["decide", "-", "--json"], Some(&doc));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["tau_tilting_finite"], "No");
    assert_eq!(r["evidence"]["minimal_band"]["shape"], "AsymSpecialBarbell");
}

#[test]
fn verdict_no_exits_zero() {
    let doc = example("Kronecker", &[]);
    let o = gentle(&["decide", "-", "--json"], Some(&doc));
    assert_eq!(json(&o)["silting_discrete"], "No");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn out_degree_three_is_rejected() {
    let doc = r#"{"vertices":["1","2","3","4"],"arrows":[
        {"id":"a","source":"1","target":"2"},
        {"id":"b","source":"1","target":"3"},
        {"id":"c","source":"1","target":"4"}]}"#;
    let o = gentle(&["validate", "-", "--json"], Some(doc));
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["algebra_class"], "invalid");
    assert!(r["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v["code"] == "OUT_DEGREE"));
    assert_eq!(gentle(&["analyze", "-"], Some(doc)).status.code(), Some(1));
}

#[test]
fn output_is_byte_stable() {
    let doc = example("Lambda", &["--r", "2", "--n", "3", "--m", "1"]);
    let runs: Vec<Vec<u8>> = (0..3)
        .map(|_| gentle(&["analyze", "-", "--json"], Some(&doc)).stdout)
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    let a = example("random", &["--seed", "7", "--size", "6", "--skew"]);
    let b = example("random", &["--seed", "7", "--size", "6", "--skew"]);
    assert_eq!(a, b);
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let o = gentle(&["validate", "-"], Some("{\"vertices\": ["));
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(
        gentle(&["validate", "-"], Some(r#"{"vertices": 3}"#))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(gentle(&["example", "Nope"], None).status.code(), Some(2));
    assert_eq!(gentle(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn winding_commands() {
    let e1 = example("E1", &[]);
    let w = |args: &[&str]| {
        let mut all = vec!["winding", "-", "--json"];
        all.extend_from_slice(args);
        json(&gentle(&all, Some(&e1)))["winding"].as_i64().unwrap()
    };
    assert_eq!(w(&["--curve", "1+ 2+ 4- 3-"]), 0);
    assert_eq!(w(&["--subset", "1,2"]) + w(&["--subset", "3"]), 0);
    let torus = example("Torus", &[]);
    let o = gentle(&["winding", "-", "--subset", "1"], Some(&torus));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dual_and_specialize_print_presentations() {
    let e1 = example("E1", &[]);
    let d = json(&gentle(&["dual", "-"], Some(&e1)));
    let arrows = d["arrows"].as_array().unwrap();
    assert_eq!(arrows.len(), 5);
    assert!(arrows
        .iter()
        .all(|a| a["id"].as_str().unwrap().ends_with('*')));
    let s2 = example("S2", &["--n", "2"]);
    let s = json(&gentle(&["specialize", "-"], Some(&s2)));
    assert_eq!(s["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn strings_and_bands() {
    let k = example("Kronecker", &[]);
    let b = json(&gentle(
        &["bands", "-", "--json", "--max-period", "2"],
        Some(&k),
    ));
    assert_eq!(b.as_array().unwrap().len(), 1);
    let a2 = example("A_n", &["--n", "2"]);
    let s = json(&gentle(&["strings", "-", "--json"], Some(&a2)));
    assert_eq!(s.as_array().unwrap().len(), 3);
}
