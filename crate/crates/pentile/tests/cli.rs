//! End-to-end runs of the command-line frontend.

use std::path::Path;

use pentile::cli::run;

fn pentile(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("pentile").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn solve_pp8_prints_reference_values() {
    let (code, out) = pentile(&["solve", "--family", "pp8", "--f", "24"]);
    assert_eq!(code, 0);
    assert!(out.contains("0.824000π"), "{out}");
    assert!(out.contains("0.1781"), "{out}");
    assert!(out.contains("0.1613"), "{out}");
}

#[test]
fn build_then_verify_re2() {
    let dir = tempfile::tempdir().unwrap();
    let t = path(dir.path(), "t.json");
    assert_eq!(pentile(&["build", "--family", "re2", "--f", "20", "--out", &t]).0, 0);
    let (code, out) = pentile(&["verify", &t]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("βγ³"), "{out}");
    let (code, out) = pentile(&["--json", "verify", &t]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn realize_and_export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let t = path(dir.path(), "t.json");
    let p = path(dir.path(), "p.json");
    assert_eq!(pentile(&["build", "--family", "e2", "--f", "16", "--out", &t]).0, 0);
    assert_eq!(pentile(&["solve", "--family", "e2", "--f", "16", "--out", &p]).0, 0);
    for ext in ["obj", "svg", "json"] {
        let m = path(dir.path(), &format!("m.{ext}"));
        let (code, out) = pentile(&["realize", &t, "--pentagon", &p, "--out", &m]);
        assert_eq!(code, 0, "{out}");
        assert!(std::fs::metadata(&m).unwrap().len() > 0);
    }
    let obj = std::fs::read_to_string(path(dir.path(), "m.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 16);
    let svg = path(dir.path(), "bare.svg");
    let (code, _) = pentile(&["export", &t, "--out", &svg]);
    assert_eq!(code, 1);
    let (code, _) = pentile(&["export", &t, "--out", &svg, "--pentagon", &p, "--pole", "0,1,0"]);
    assert_eq!(code, 0);
}

#[test]
fn perturbed_pentagon_fails_closure() {
    let dir = tempfile::tempdir().unwrap();
    let t = path(dir.path(), "t.json");
    let p = path(dir.path(), "p.json");
    pentile(&["build", "--family", "e2", "--f", "16", "--out", &t]);
    pentile(&["solve", "--family", "e2", "--f", "16", "--out", &p]);
    let mut spec: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    spec["b"] = (spec["b"].as_f64().unwrap() + 1e-3).into();
    std::fs::write(&p, spec.to_string()).unwrap();
    let (code, out) = pentile(&["--json", "realize", &t, "--pentagon", &p, "--out", &path(dir.path(), "m.obj")]);
    assert_eq!(code, 1);
    assert!(out.contains("closure-failure"), "{out}");
}

#[test]
fn enumerate_and_errors() {
    let (code, out) = pentile(&["enumerate", "--angles", "2/3 pi,2/3 pi,1/2 pi,1.600117758528,2.588672446259", "--max-degree", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "γ⁴") && out.lines().any(|l| l == "αδε"), "{out}");
    assert_eq!(pentile(&["solve", "--family", "e2", "--f", "20", "--a", "2.0"]).0, 1);
    assert_eq!(pentile(&["solve", "--family", "nope", "--f", "20"]).0, 1);
    assert_eq!(pentile(&["build", "--family", "s16", "--f", "20", "--out", "/nonexistent/x.json"]).0, 1);
    assert_eq!(pentile(&["frobnicate"]).0, 2);
}
