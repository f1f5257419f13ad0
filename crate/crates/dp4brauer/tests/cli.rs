use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn dp4br(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dp4br")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("dp4br-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn cohomology_reports_agreeing_routes() {
    let o = dp4br(&["cohomology", "--group", data("typeii-sqrt5.group").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("H1 (lattice formula): Z/2"), "{s}");
    assert!(s.contains("H1 (cochains): Z/2"), "{s}");
}

#[test]
fn localinv_on_shipped_documents() {
    let cases = [
        ("tame-e4-f4.data.json", "tame-e4-f4.standard.cocycle.json", false, "invariant 1/4"),
        ("symbol-2-3-at-3.data.json", "symbol-2-3-at-3.cocycle.json", false, "invariant 1/2"),
        ("quaternion-2adic.data.json", "quaternion-2adic.cocycle.json", true, "invariant 1/2"),
    ];
    for (d, c, wild, want) in cases {
        let (d, c) = (data(d), data(c));
        let mut args = vec!["localinv", "--data", d.to_str().unwrap(), "--cocycle", c.to_str().unwrap()];
        if wild {
            args.push("--wild");
        }
        let o = dp4br(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains(want), "{}", stdout(&o));
    }
}

#[test]
fn broken_cocycle_is_a_violation() {
    let c = scratch(
        "broken.cocycle.json",
        r#"{"order":2,"values":[{"val":0,"unit":[0]},{"val":1,"unit":[0]},{"val":0,"unit":[0]},{"val":1,"unit":[0]}]}"#,
    );
    let d = data("symbol-2-3-at-3.data.json");
    let o = dp4br(&["localinv", "--data", d.to_str().unwrap(), "--cocycle", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn malformed_input_exits_with_two() {
    let g = scratch("bad.group", "{\n");
    assert_eq!(dp4br(&["cohomology", "--group", g.to_str().unwrap()]).status.code(), Some(2));
    let c = scratch("bad.cocycle.json", "[1, 2");
    let d = data("symbol-2-3-at-3.data.json");
    let o = dp4br(&["localinv", "--data", d.to_str().unwrap(), "--cocycle", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = dp4br(&["lift-cocycle", "--group", data("typeii-sqrt5.group").to_str().unwrap(), "--class", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(dp4br(&["cohomology", "--group", "/nonexistent/x.group"]).status.code(), Some(2));
}

#[test]
fn lift_document_is_json() {
    let o = dp4br(&["lift-cocycle", "--group", data("typeii-sqrt5.group").to_str().unwrap(), "--class", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("JSON document");
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    assert_eq!(v["phi"].as_array().unwrap().len(), 8);
}

#[test]
fn evaluate_obeys_reciprocity() {
    let s = data("typeii-sqrt5.surface.json");
    let o = dp4br(&["evaluate", "--surface", s.to_str().unwrap(), "--recipe", "alpha", "--height", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reciprocity failures: 0"), "{}", stdout(&o));
    let o = dp4br(&["evaluate", "--surface", s.to_str().unwrap(), "--recipe", "no-such-recipe"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_writes_csv() {
    let out = std::env::temp_dir().join(format!("dp4br-cli-{}-classes.csv", std::process::id()));
    let o = dp4br(&["classify", "--csv", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 198);
}
