//! Behaviour of the `bnor` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn bnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn five_node(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn gate_table_for_lc() {
    let o = bnor(&[
        "gate",
        "--variant",
        "lc",
        "--link",
        "0.6:0.8",
        "--link",
        "0.7:0.9",
        "--eta",
        "0",
        "--eta",
        "0.1",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2 + 9);
    assert!(
        out.contains("{T},{T,F}      0.6000   0.0000   0.4000   1.0000"),
        "{out}"
    );
}

#[test]
fn gate_nor_has_only_probabilistic_rows() {
    let o = bnor(&["gate", "--variant", "nor", "--link", "0.6", "--link", "0.7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("{T},{T}        0.8800   0.1200   0.0000"), "{out}");
    assert_eq!(out.lines().count(), 2 + 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["gate", "--variant", "oc", "--lambda", "1.2", "--link", "0.6:0.8"][..],
        &["gate", "--variant", "oc", "--link", "0.6:0.8"],
        &["gate", "--variant", "tbnor", "--lambda", "0.3", "--link", "0.6:0.8"],
        &["gate", "--variant", "lc", "--link", "0.9:0.1"],
        &["gate", "--variant", "bn", "--link", "0.5"],
    ] {
        let o = bnor(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn domain_errors_exit_1() {
    // OBNOR with a known-ignorant parent whose upper link leaves no room.
    let o = bnor(&["gate", "--variant", "obnor", "--link", "0.6:0.95", "--eta", "0.2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let o = bnor(&[
        "gate",
        "--variant",
        "lc",
        "--link",
        "0.6:0.8",
        "--eta",
        "0.1",
        "--eta",
        "0.2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reliability_reports() {
    let o = bnor(&[
        "reliability",
        &five_node("five_node_uncertain.json"),
        "--variant",
        "oc",
        "--lambda",
        "0.6",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in [
        "m(S={T})    0.9082",
        "m(S={F})    0.0741",
        "m(S={T,F})  0.0177",
        "BetP(S=T)   0.9171",
        "Pl(S=T)     0.9259",
    ] {
        assert!(out.contains(line), "{line} missing in\n{out}");
    }

    let o = bnor(&[
        "reliability",
        &five_node("five_node.json"),
        "--variant",
        "tbnor",
        "--verify",
    ]);
    let out = stdout(&o);
    assert!(
        out.contains("Bel(S=T)    0.9148") && out.contains("Pl(S=T)     0.9148"),
        "{out}"
    );
    assert!(out.contains("verify: world enumeration R = 0.91476"), "{out}");
}

#[test]
fn malformed_files_exit_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("truncated.json", "{\n  \"nodes\": [\"a\", \"b\"],\n  \"edges\": ["),
        (
            "both.json",
            r#"{"nodes":["a","b"],"edges":[{"id":"e","from":"a","to":"b","prob":0.5,"interval":[0.1,0.2]}],"source":"a","sink":"b"}"#,
        ),
        (
            "dangling.json",
            r#"{"nodes":["a","b"],"edges":[{"id":"e","from":"a","to":"c","prob":0.5}],"source":"a","sink":"b"}"#,
        ),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let o = bnor(&["reliability", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(o.stdout.is_empty(), "{name}");
    }
    let o = bnor(&["reliability", dir.path().join("truncated.json").to_str().unwrap()]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn sweep_csv_is_deterministic() {
    let file = five_node("five_node_uncertain.json");
    let args = [
        "sweep", &file, "--param", "lambda", "--from", "0", "--to", "1", "--steps", "11",
    ];
    let (a, b) = (bnor(&args), bnor(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert_eq!(out.lines().next(), Some("param,m_T,m_F,m_TF,bel_T,pl_T,betp_T"));
    assert_eq!(out.lines().count(), 12);
    assert_eq!(
        out.lines().nth(1),
        Some("0.0000,0.9007,0.0828,0.0165,0.9007,0.9172,0.9090")
    );
    assert_eq!(
        out.lines().last(),
        Some("1.0000,0.9133,0.0683,0.0184,0.9133,0.9317,0.9225")
    );
}

#[test]
fn sweep_writes_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("width.csv");
    let file = five_node("five_node_uncertain.json");
    let o = bnor(&[
        "sweep",
        &file,
        "--param",
        "width",
        "--edge",
        "e2",
        "--from",
        "0",
        "--to",
        "0.1",
        "--steps",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);

    let o = bnor(&["sweep", &file, "--param", "width", "--from", "0", "--to", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bnor(&[
        "sweep", &file, "--param", "width", "--edge", "e2", "--from", "0", "--to", "0.9",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compare_has_six_columns() {
    let o = bnor(&["compare", &five_node("five_node_uncertain.json")]);
    assert!(o.status.success());
    let out = stdout(&o);
    let header = out.lines().next().unwrap();
    for name in ["ImNOR", "LC-BNOR", "PBNOR", "OBNOR", "TBNOR", "OCBNOR(λ=0.6)"] {
        assert!(header.contains(name));
    }
    let betp = out.lines().find(|l| l.starts_with("BetP(S=T)")).unwrap();
    assert_eq!(betp.split_whitespace().count(), 7);
    assert!(betp.ends_with("0.9171"));
}

#[test]
fn infer_alarm_file() {
    let o = bnor(&["infer", &five_node("alarm.json"), "--verify"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("A      0.4262   0.4590   0.1148"), "{out}");
    assert!(out.contains("verify: joint enumeration agrees"));
    let o = bnor(&["infer", &five_node("alarm.json"), "--target", "Z"]);
    assert_eq!(o.status.code(), Some(1));
}
