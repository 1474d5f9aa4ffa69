use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn princ(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_princ"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CHAIN3: &str = r#"{"elements": ["0", "m", "1"], "leq": [["0", "m"], ["m", "1"]]}"#;

#[test]
fn represent_then_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "p.json", CHAIN3);
    let lattice = dir.path().join("l.json");
    let aux = dir.path().join("aux.json");
    let dot = dir.path().join("l.dot");
    let trace = dir.path().join("trace.json");
    let report = dir.path().join("report.json");
    let out = princ(&[
        "represent",
        s(&poset),
        "--out",
        s(&lattice),
        "--aux",
        s(&aux),
        "--dot",
        s(&dot),
        "--trace",
        s(&trace),
        "--report",
        s(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let l: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&lattice).unwrap()).unwrap();
    assert_eq!(l["elements"].as_array().unwrap().len(), 11);
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["verdict"], "ok");
    assert_eq!(r["witness"].as_array().unwrap().len(), 3);
    let t: serde_json::Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t[0]["kind"], "vertical");
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    for target in [&lattice, &aux] {
        let out = princ(&["verify", s(&poset), s(target)]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["verdict"], "ok");
    }
    let out = princ(&["check-aux", s(&aux)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("(A8) ok"));
}

#[test]
fn represent_without_zero_is_rejected() {
    let dir = TempDir::new().unwrap();
    let poset = write(
        &dir,
        "p.json",
        r#"{"elements": ["a", "b", "t"], "leq": [["a", "t"], ["b", "t"]]}"#,
    );
    let out = princ(&["represent", s(&poset)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("directed"));
}

#[test]
fn one_element_input() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "p.json", r#"{"elements": ["z"]}"#);
    let out = princ(&["represent", s(&poset)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["elements"].as_array().unwrap().len(), 1);
}

#[test]
fn parse_and_io_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "p.json", "{\"elements\": [");
    assert_eq!(code(&princ(&["represent", s(&broken)])), 3);
    let missing = dir.path().join("nope.json");
    assert_eq!(code(&princ(&["represent", s(&missing)])), 3);
    let cyclic = write(
        &dir,
        "c.json",
        r#"{"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}"#,
    );
    assert_eq!(code(&princ(&["represent", s(&cyclic)])), 2);
}

/// Index of the least congruence collapsing `lo` and `hi`.
fn least_collapsing(congruences: &[serde_json::Value], lo: &str, hi: &str) -> usize {
    let blocks = |c: &serde_json::Value| c["blocks"].as_array().unwrap().clone();
    (0..congruences.len())
        .filter(|&i| {
            blocks(&congruences[i]).iter().any(|b| {
                let b = b.as_array().unwrap();
                b.iter().any(|x| x == lo) && b.iter().any(|x| x == hi)
            })
        })
        .max_by_key(|&i| blocks(&congruences[i]).len())
        .unwrap()
}

#[test]
fn princ_of_the_bridge_orders_p_below_q() {
    let dir = TempDir::new().unwrap();
    let out = princ(&["gadget", "bridge"]);
    assert_eq!(code(&out), 0);
    let lattice = write(&dir, "bridge.json", &stdout(&out));
    let out = princ(&["princ", s(&lattice)]);
    assert_eq!(code(&out), 0);
    let p = json(&out);
    let congruences = p["congruences"].as_array().unwrap();
    assert_eq!(congruences[0]["blocks"].as_array().unwrap().len(), 11);
    let edges: Vec<(usize, usize)> = serde_json::from_value(p["edges"].clone()).unwrap();
    let cp = least_collapsing(congruences, "a_p", "b_p");
    let cq = least_collapsing(congruences, "a_q", "b_q");
    assert_ne!(cp, cq);
    // cq is reachable from cp along containment covers
    let mut seen = vec![cp];
    while let Some(x) = seen.pop() {
        if x == cq {
            return;
        }
        seen.extend(edges.iter().filter(|e| e.0 == x).map(|e| e.1));
    }
    panic!("cg(a_p, b_p) is not below cg(a_q, b_q)");
}

#[test]
fn gadgets() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("b.dot");
    let out = princ(&["gadget", "bridge", "--dot", s(&dot)]);
    assert_eq!(code(&out), 0);
    let b = json(&out);
    assert_eq!(b["elements"].as_array().unwrap().len(), 11);
    assert_eq!(b["covers"].as_array().unwrap().len(), 15);
    let edges = fs::read_to_string(&dot)
        .unwrap()
        .lines()
        .filter(|l| l.contains("->"))
        .count();
    assert_eq!(edges, 15);

    let out = princ(&["gadget", "vertical-skeleton"]);
    assert_eq!(json(&out)["elements"].as_array().unwrap().len(), 9);
    assert_ne!(code(&princ(&["gadget", "nonsense"])), 0);
}

#[test]
fn mismatched_verify_fails_without_witness() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "p.json", CHAIN3);
    let n6 = write(
        &dir,
        "n6.json",
        r#"{"elements": ["0", "a1", "b1", "a2", "b2", "1"],
            "covers": [["0", "a1"], ["a1", "b1"], ["b1", "1"], ["0", "a2"], ["a2", "b2"], ["b2", "1"]],
            "bottom": "0", "top": "1"}"#,
    );
    let out = princ(&["verify", s(&poset), s(&n6)]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["verdict"], "fail");
    assert!(r["witness"].is_null());
    assert!(r["explanation"]
        .as_str()
        .unwrap()
        .contains("no order isomorphism"));
}

#[test]
fn corrupted_coloring_names_the_clause() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "p.json", CHAIN3);
    let aux = dir.path().join("aux.json");
    let out = princ(&["represent", s(&poset), "--aux", s(&aux)]);
    assert_eq!(code(&out), 0);
    let mut a: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&aux).unwrap()).unwrap();
    // (0v0, x0) generates everything but now claims the middle color
    let mut hit = false;
    for entry in a["gamma"].as_array_mut().unwrap() {
        if entry[0] == "0v0" && entry[1] == "x0" {
            entry[2] = "m".into();
            hit = true;
        }
    }
    assert!(hit);
    fs::write(&aux, a.to_string()).unwrap();
    let out = princ(&["check-aux", s(&aux)]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("(A1) FAILED: C1") || text.contains("(A1) FAILED: C2"),
        "{text}"
    );
}

#[test]
fn stream_of_covering_ideals() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "p.json", CHAIN3);
    let ideals = write(&dir, "ideals.txt", "0\n# grow\n0 m\n0, m, 1\n");
    let lattice = dir.path().join("l.json");
    let out = princ(&[
        "represent",
        s(&poset),
        "--stream",
        s(&ideals),
        "--out",
        s(&lattice),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    // each stage adds a fresh vertical layer around the previous one
    assert_eq!(lines[1]["lattice_elements"], 9);
    assert_eq!(lines[2]["lattice_elements"], 17);
    assert_eq!(lines[2]["embeds_previous"], true);
    assert!(lines.iter().all(|l| l["verdict"] == "ok"));
}

#[test]
fn stream_that_bridges_an_old_color_reports_failure() {
    let dir = TempDir::new().unwrap();
    let poset = write(
        &dir,
        "p.json",
        r#"{"elements": ["0", "a", "b", "1"], "leq": [["0", "a"], ["a", "b"], ["b", "1"]]}"#,
    );
    let ideals = write(&dir, "ideals.txt", "0\n0 a\n0 a b 1\n");
    let out = princ(&["represent", s(&poset), "--stream", s(&ideals)]);
    assert_eq!(code(&out), 1);
    let last = stdout(&out).lines().last().unwrap().to_string();
    let last: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!(last["verdict"], "fail");
}

#[test]
fn stream_rejects_non_principal_ideals() {
    let dir = TempDir::new().unwrap();
    let poset = write(&dir, "p.json", CHAIN3);
    let ideals = write(&dir, "ideals.txt", "0 1\n");
    let out = princ(&["represent", s(&poset), "--stream", s(&ideals)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn selftest_passes() {
    let out = princ(&["selftest", "--seed", "11", "--count", "5", "--max", "6"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("5 of 5 passed"));
}
