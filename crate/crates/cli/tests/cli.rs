use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unischeme"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("unischeme-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_rejects_small_n() {
    let out = run(&["build", "--n", "1", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n must be ≥ 2"));
}

#[test]
fn build_documents() {
    let out = run(&["build", "--n", "4", "--q", "2", "--mode", "both"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["rank"], 7);
    assert_eq!(doc["valencies"], serde_json::json!([1, 1, 1, 32, 32, 32, 36]));
    assert_eq!(doc["provenance"]["mode"], "both");

    let out = run(&["build", "--n", "2", "--q", "5"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["rank"], 48);
}

#[test]
fn build_is_deterministic_and_checkable() {
    let a = run(&["build", "--n", "3", "--q", "3"]);
    let b = run(&["build", "--n", "3", "--q", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let path = scratch("doc33.json");
    std::fs::write(&path, &a.stdout).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn build_csv() {
    let out = run(&["build", "--n", "2", "--q", "2", "--format", "csv"]);
    assert!(stdout(&out).starts_with("h,i,j,p\n0,0,0,1\n"));
}

#[test]
fn chartable_prints() {
    let out = run(&["chartable", "--n", "3"]);
    let text = stdout(&out);
    assert!(out.status.success());
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().nth(1).unwrap().contains("-4ω̄"));

    let out = run(&["chartable", "--n", "4", "--fusion", "coarse"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("| 90"));

    let out = run(&["chartable", "--n", "2", "--fusion", "symmetrize"]);
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn chartable_document() {
    let path = scratch("ct3.json");
    let out = run(&["chartable", "--n", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"-1+-1*w\""));
    assert!(run(&["check", path.to_str().unwrap()]).status.success());
}

#[test]
fn export_and_reimport() {
    let out = run(&["export", "--n", "2", "--q", "2"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("9 6"));
    for (x, line) in lines.enumerate() {
        assert_eq!(line.split_whitespace().nth(x), Some("0"));
    }
    let path = scratch("h32.txt");
    let out = run(&["export", "--n", "3", "--q", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["check", path.to_str().unwrap(), "--n", "3", "--q", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));

    let text = std::fs::read_to_string(&path).unwrap();
    let broken = text.replacen("0 ", "1 ", 1);
    std::fs::write(&path, broken).unwrap();
    let out = run(&["check", path.to_str().unwrap(), "--n", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn export_budget() {
    let out = run(&["export", "--n", "6", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "--n", "4", "--q", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = run(&["verify", "--n", "4", "--q", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("non-commutative, witness (3,8,9)"));
    let out = run(&["verify", "--n", "3", "--q", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("T empty"));
}
