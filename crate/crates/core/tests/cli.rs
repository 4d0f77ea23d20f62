use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.graph"))
}

fn gpcube(graph: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpcube"))
        .arg("--graph")
        .arg(fixture(graph))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_sorts_commuting_letters() {
    let o = gpcube("zz", &["normalize", "t, s"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s t");
}

#[test]
fn equal_exit_codes() {
    assert_eq!(gpcube("zz", &["equal", "s, t, s^-1", "t", "--oracle"]).status.code(), Some(0));
    let o = gpcube("f2", &["equal", "s, t, s^-1", "t", "--oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("oracle: different"));
    assert_eq!(gpcube("line", &["equal", "s", ""]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gpcube("zz", &["normalize", "q"]).status.code(), Some(2));
    assert_eq!(gpcube("zz", &["frobnicate"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_gpcube")).args(["normalize", "s"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(gpcube("zz", &["--format", "dot", "check", "links"]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_3() {
    let o = gpcube("f2", &["--radius", "4", "--budget-elements", "3", "build"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn build_formats() {
    let dot = stdout(&gpcube("line", &["--radius", "1", "--format", "dot", "build"]));
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("->"));
    let json: serde_json::Value = serde_json::from_slice(&gpcube("line", &["--radius", "1", "build"]).stdout).unwrap();
    assert!(json.is_object());
    let text = stdout(&gpcube("line", &["--radius", "3", "--format", "text", "build"]));
    assert!(text.contains("vertices 13"));
    assert!(text.contains("euler characteristic 1"));
}

#[test]
fn check_all_passes_on_pentagon() {
    let o = gpcube("pentagon", &["check", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["pass"], true);
    assert_eq!(cert["check"], "all");
    for section in ["links", "morse", "special", "kernel", "dj"] {
        assert_eq!(cert["results"][section]["pass"], true, "{section}");
    }
    assert_eq!(cert["graph_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn check_text_summary() {
    let o = gpcube("mixed", &["--format", "text", "check", "kernel"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("kernel: pass"));
    assert!(s.ends_with("overall: pass\n"));
}

#[test]
fn check_dj_on_mixed() {
    let o = gpcube("mixed", &["check", "dj"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["results"]["dj"]["pass"], true);
}

#[test]
fn dj_prints_both_graphs() {
    let o = gpcube("line", &["dj"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let prime = s.find("# Gamma'\n").unwrap();
    let dprime = s.find("# Gamma''\n").unwrap();
    assert!(prime < dprime);
    assert!(s[dprime..].contains("s@1"));
    assert!(s[dprime..].contains("s@0"));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = gpcube("z3", &["--out", path.to_str().unwrap(), "check", "links"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["results"]["links"]["pass"], true);
}
