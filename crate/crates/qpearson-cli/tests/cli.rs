//! End-to-end tests of the binary: JSON report shape, golden band
//! support, exit codes, and report determinism.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qpearson"))
}

fn family_file(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write");
    f
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn suite_prop41_rational_passes() {
    let out = bin()
        .args([
            "suite-prop41",
            "--mode",
            "rational",
            "--t",
            "1/2",
            "--N",
            "8",
            "--no-timestamps",
        ])
        .output()
        .expect("run");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["suite"], "prop41");
    assert_eq!(v["config"]["t"], "1/2");
    assert!(v.get("timestamp").is_none());
}

#[test]
fn band_reports_the_three_offsets() {
    let f = family_file(r#"{ "mode": "rational", "t": "1/2", "family": "prop41", "N": 10 }"#);
    let out = bin()
        .args(["band", "--phi", "U2", "--no-timestamps", "--family"])
        .arg(f.path())
        .output()
        .expect("run");
    assert!(out.status.success());
    let v = json_of(&out);
    let mut offsets: Vec<i64> = v["band"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["offset"].as_i64().unwrap())
        .collect();
    offsets.sort_unstable();
    offsets.dedup();
    assert_eq!(offsets, vec![-3, -1, 1]);
    assert_eq!(v["extra"]["s"], "3");
}

#[test]
fn classify_reports_class_two() {
    let f = family_file(r#"{ "mode": "rational", "t": "1/2", "family": "prop41", "N": 10 }"#);
    let out = bin()
        .args(["classify", "--phi", "U2", "--no-timestamps", "--family"])
        .arg(f.path())
        .output()
        .expect("run");
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["class"]["class"], 2);
    assert_eq!(v["class"]["s"], 3);
    assert_eq!(v["class"]["r_common"], 0);
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn classify_symbolic_family_file() {
    let f = family_file(r#"{ "mode": "symbolic", "family": "q-hermite", "N": 8 }"#);
    let out = bin()
        .args(["classify", "--phi", "1", "--no-timestamps", "--family"])
        .arg(f.path())
        .output()
        .expect("run");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["class"]["verdict"], "Classical");
}

#[test]
fn explicit_tables_round_trip() {
    // B = 0, C_n = (1 - q^n)/4 written out as literals
    let f = family_file(
        r#"{
          "mode": "symbolic",
          "B": ["0","0","0","0","0","0","0","0","0","0","0","0","0","0","0"],
          "C": ["0",
                "(1 - t^2)/4", "(1 - t^4)/4", "(1 - t^6)/4", "(1 - t^8)/4",
                "(1 - t^10)/4", "(1 - t^12)/4", "(1 - t^14)/4", "(1 - t^16)/4",
                "(1 - t^18)/4", "(1 - t^20)/4", "(1 - t^22)/4", "(1 - t^24)/4",
                "(1 - t^26)/4", "(1 - t^28)/4"],
          "N": 6
        }"#,
    );
    let out = bin()
        .args(["classify", "--phi", "1", "--N", "6", "--no-timestamps", "--family"])
        .arg(f.path())
        .output()
        .expect("run");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["class"]["verdict"], "Classical");
}

#[test]
fn hahn_classify_branches() {
    let asc = family_file(
        r#"{ "mode": "rational", "operator": "hahn", "q": "1/3", "omega": "1/2",
             "family": "al-salam-carlitz", "params": {"r": "1", "s": "2"}, "N": 8 }"#,
    );
    let out = bin()
        .args(["hahn-classify", "--c", "3/4", "--no-timestamps", "--family"])
        .arg(asc.path())
        .output()
        .expect("run");
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["extra"]["verdict"], "classical");

    let class_one = family_file(
        r#"{ "mode": "symbolic", "operator": "hahn", "omega": "0",
             "family": "hahn-class1", "params": {"a": "2", "b": "1"}, "N": 8 }"#,
    );
    let out = bin()
        .args(["hahn-classify", "--c", "0", "--no-timestamps", "--family"])
        .arg(class_one.path())
        .output()
        .expect("run");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["extra"]["verdict"], "semiclassical-class-one");
}

#[test]
fn regularity_failure_exits_one() {
    // engineered d_5 = 0 at t = 1/2: d = -gamma_5/alpha_5 = -1364/1025
    let out = bin()
        .args([
            "regularity",
            "--mode",
            "rational",
            "--t",
            "1/2",
            "--phi",
            "x^2+1",
            "--psi",
            "(-1364/1025)*x",
            "--N",
            "10",
            "--no-timestamps",
        ])
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["pass"], Value::Bool(false));
    assert_eq!(v["checks"][0]["first_failure"], 5);
}

#[test]
fn malformed_family_exits_two() {
    let f = family_file("{ not json");
    let out = bin()
        .args(["band", "--phi", "U2", "--family"])
        .arg(f.path())
        .output()
        .expect("run");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed family file"));
}

#[test]
fn reports_are_deterministic_without_timestamps() {
    let run = || {
        bin()
            .args([
                "verify-lemma25",
                "--mode",
                "rational",
                "--t",
                "1/2",
                "--deg-bound",
                "4",
                "--trials",
                "6",
                "--seed",
                "99",
                "--no-timestamps",
            ])
            .output()
            .expect("run")
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    // with timestamps the field exists
    let out = bin()
        .args([
            "verify-lemma25",
            "--mode",
            "rational",
            "--t",
            "1/2",
            "--deg-bound",
            "4",
            "--trials",
            "6",
            "--seed",
            "99",
        ])
        .output()
        .expect("run");
    let v = json_of(&out);
    assert!(v.get("timestamp").is_some());
}

#[test]
fn moments_export_uses_scalar_grammar() {
    let f = family_file(r#"{ "mode": "rational", "t": "1/2", "family": "prop41", "N": 6 }"#);
    let out = bin()
        .args([
            "classify",
            "--phi",
            "U2",
            "--emit-moments",
            "--no-timestamps",
            "--family",
        ])
        .arg(f.path())
        .output()
        .expect("run");
    assert!(out.status.success());
    let v = json_of(&out);
    let moments = v["moments"].as_array().unwrap();
    assert_eq!(moments[0], "1");
    // u_2 = C_1 = (1 + t)/2 = 3/4 at t = 1/2
    assert_eq!(moments[2], "3/4");
}
