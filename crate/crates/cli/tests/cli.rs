use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn stabgraph(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabgraph"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn convert(dir: &Path, code: &str) -> Output {
    stabgraph(&["convert", code, "--out-dir", "out"], dir)
}

#[test]
fn convert_writes_all_outputs() {
    let dir = TempDir::new().unwrap();
    let out = convert(dir.path(), "gottesman_8_3_3");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    for file in ["gamma.txt", "xi.txt", "record.json", "graph.dot"] {
        assert!(dir.path().join("out").join(file).exists(), "{file}");
    }
    let dot = fs::read_to_string(dir.path().join("out/graph.dot")).unwrap();
    assert_eq!(dot.matches("shape=box").count(), 3);
    assert_eq!(dot.matches("shape=circle").count(), 8);
    let xi = fs::read_to_string(dir.path().join("out/xi.txt")).unwrap();
    assert!(xi.starts_with("3 8\n"));
    assert_eq!(xi.lines().count(), 12);
}

#[test]
fn convert_five_qubit_gives_six_vertices() {
    let dir = TempDir::new().unwrap();
    let out = convert(dir.path(), "five_qubit");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dot = fs::read_to_string(dir.path().join("out/graph.dot")).unwrap();
    assert_eq!(dot.matches("shape=box").count(), 1);
    assert_eq!(dot.matches("shape=circle").count(), 5);
}

#[test]
fn malformed_code_reports_line() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.code"), "# header\n2 0\nXX\nZQ\n").unwrap();
    let out = convert(dir.path(), "bad.code");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
    let missing = convert(dir.path(), "no_such.code");
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    convert(dir.path(), "gottesman_8_3_3");
    let ok = stabgraph(&["verify", "out/xi.txt"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("detectable (strong): 37/37"));

    let e2 = stabgraph(&["verify", "out/record.json", "--e", "2"], dir.path());
    assert_eq!(e2.status.code(), Some(1));
    assert!(stdout(&e2).contains("first undetectable E = {"));
}

#[test]
fn verify_json_report() {
    let dir = TempDir::new().unwrap();
    convert(dir.path(), "five_qubit");
    let out = stabgraph(
        &["verify", "out/xi.txt", "--mode", "weak", "--json", "-"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["mode"], "weak");
    assert_eq!(report["per_config"].as_array().unwrap().len(), 16);
}

#[test]
fn verify_rejects_asymmetric_xi() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("xi.txt"), "1 2\n011\n101\n100\n").unwrap();
    let out = stabgraph(&["verify", "xi.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("xi.txt"));
}

#[test]
fn crosscheck_agrees_and_caps() {
    let dir = TempDir::new().unwrap();
    for code in ["gottesman_8_3_3", "five_qubit"] {
        let out = stabgraph(&["crosscheck", code], dir.path());
        assert_eq!(out.status.code(), Some(0), "{code}: {}", stderr(&out));
        assert!(stdout(&out).contains("disagreements (weak): 0/"));
    }
    let big = format!(
        "15 0\n{}",
        (0..15).map(|q| format!("Z{}\n", q + 1)).collect::<String>()
    );
    fs::write(dir.path().join("big.code"), big).unwrap();
    let out = stabgraph(&["crosscheck", "big.code"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--oracle-cap"), "{}", stderr(&out));
}

#[test]
fn export_formats_and_round_trip() {
    let dir = TempDir::new().unwrap();
    convert(dir.path(), "gottesman_8_3_3");
    let out = stabgraph(
        &["export", "out/record.json", "-f", "json", "-o", "again.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let original = fs::read(dir.path().join("out/record.json")).unwrap();
    assert_eq!(fs::read(dir.path().join("again.json")).unwrap(), original);

    let matrix = stdout(&stabgraph(&["export", "out/xi.txt", "-f", "matrix"], dir.path()));
    assert_eq!(matrix.lines().count(), 11);
    let doc = stdout(&stabgraph(&["export", "out/xi.txt", "-f", "json"], dir.path()));
    assert!(doc.contains("stabgraph.xi/1"));
    let bad = stabgraph(&["export", "out/xi.txt", "-f", "png"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn export_stabilizer_state_has_only_outputs() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("xi.txt"), "0 3\n010\n101\n010\n").unwrap();
    let dot = stdout(&stabgraph(&["export", "xi.txt", "-f", "dot"], dir.path()));
    assert!(!dot.contains("box"));
    assert_eq!(dot.matches("shape=circle").count(), 3);
}

#[test]
fn outputs_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    convert(dir.path(), "steane_7_1_3");
    let one = stabgraph(&["--threads", "1", "verify", "out/xi.txt"], dir.path());
    let four = stabgraph(&["--threads", "4", "verify", "out/xi.txt"], dir.path());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn fuzz_is_seeded() {
    let dir = TempDir::new().unwrap();
    let a = stabgraph(&["fuzz", "--seed", "9", "--cases", "15"], dir.path());
    let b = stabgraph(&["fuzz", "--seed", "9", "--cases", "15"], dir.path());
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}
