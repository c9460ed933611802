use std::process::{Command, Output};

fn run(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magicsq"))
        .args(args)
        .env("MS_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(&["table", "--family", "L9", "--rows", "plain", "--cols", "plain"], d.path()).status.code(), Some(2));
    assert_eq!(run(&["embed", "--family", "L3", "--col", "R", "--step", "4"], d.path()).status.code(), Some(2));
    assert_eq!(run(&["embed", "--family", "L3", "--cols", "split", "--col", "O", "--step", "1"], d.path()).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], d.path()).status.code(), Some(2));
}

#[test]
fn small_cell_is_su3() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["--no-cache", "cell", "--family", "L3", "--row", "C", "--col", "R"], d.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim 8 chi -8"));
    assert!(stdout(&o).contains("-> su(3)"));
    assert_eq!(std::fs::read_dir(d.path()).map(|r| r.count()).unwrap_or(0), 0);
}

#[test]
fn emitted_constants_identify_the_same() {
    let d = tempfile::tempdir().unwrap();
    let sc = d.path().join("c.json");
    let o = run(&["cell", "--family", "L12", "--row", "H_S", "--col", "C", "--emit-sc", sc.to_str().unwrap()], d.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o2 = run(&["identify", "--sc", sc.to_str().unwrap()], d.path());
    assert!(o2.status.success());
    let name = stdout(&o).lines().next().unwrap().rsplit("-> ").next().unwrap().to_string();
    assert!(stdout(&o2).trim_end().ends_with(&name), "{name} vs {}", stdout(&o2));

    let bad = d.path().join("bad.json");
    std::fs::write(&bad, "{\"header\":{}}").unwrap();
    assert_eq!(run(&["identify", "--sc", bad.to_str().unwrap()], d.path()).status.code(), Some(2));
}

#[test]
fn table_formats_are_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let args = ["table", "--family", "L3", "--rows", "plain", "--cols", "plain", "--format", "csv"];
    let a = run(&args, d.path());
    assert!(a.status.success());
    let text = stdout(&a);
    assert_eq!(text.lines().next().unwrap(), ",R,C,H,O");
    assert_eq!(text.lines().nth(1).unwrap(), "R,so(3),su(3),usp(6),f4(-52)");
    assert_eq!(text, stdout(&run(&args, d.path())));
    let j = run(&["table", "--family", "L3", "--rows", "plain", "--cols", "plain", "--format", "json"], d.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["golden_table"], serde_json::json!([1, false]));
}

#[test]
fn embed_reports_commutant() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["embed", "--family", "L3", "--rows", "split", "--col", "R", "--step", "2"], d.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("commutant (1,+1) expected (1,+1)"), "{}", stdout(&o));
}
