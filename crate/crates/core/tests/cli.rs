use std::path::PathBuf;
use std::process::Command;

use tempfile::TempDir;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn first(&self) -> &str {
        self.stdout.lines().next().unwrap_or("")
    }
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_mcnaughton"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn compile_negation_has_one_cell() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "neg.formula", "!x1\n");
    let r = run(&["compile", "--formula", &f, "--arity", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.first(), "plfunction f {");
    assert_eq!(r.stdout.matches("cell:").count(), 1);
}

#[test]
fn compile_double_breaks_at_half() {
    let r = run(&["compile", "--formula", &data("double.formula"), "--arity", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "plfunction f {\n  arity: 1\n  cell: (0) (1/2) => [2] 0\n  cell: (1/2) (1) => [0] 1\n}\n"
    );
}

#[test]
fn compile_to_file_and_formula_record() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.wb", "formula f {\n  arity: 2\n  text: (x1 & x2)\n}\n");
    let out = d.path().join("out.wb");
    let r = run(&["compile", "--formula", &f, "--arity", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("plfunction f {\n  arity: 2\n"));
    assert_eq!(run(&["compile", "--formula", &f, "--arity", "3"]).code, 3);
}

#[test]
fn compile_errors() {
    let r = run(&["compile", "--formula", &data("broken.formula"), "--arity", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("column 6"), "{}", r.stderr);
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.formula", "(x1 + x3)");
    assert_eq!(run(&["compile", "--formula", &f, "--arity", "2"]).code, 3);
    let g = write(&d, "g.wb", "widget w {\n}\n");
    let r = run(&["compile", "--formula", &g, "--arity", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 1, column 1"), "{}", r.stderr);
}

#[test]
fn cusp_is_not_sss_and_witness_verifies() {
    let d = TempDir::new().unwrap();
    let w = d.path().join("w.wb");
    let svg = d.path().join("c.svg");
    let r = run(&[
        "check-sss",
        "--set",
        &data("cusp.wb"),
        "--kmax",
        "20",
        "--emit-witness",
        w.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert_eq!(r.first(), "NOT-SSS");
    assert!(r.stdout.contains("witness: x=(0,0) u=(1,0) λ=1/2"));
    let text = std::fs::read_to_string(&w).unwrap();
    assert_eq!(text.matches("  row: ").count(), 20);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let v = run(&["verify", "--cert", w.to_str().unwrap()]);
    assert_eq!((v.code, v.first()), (0, "OK"), "{}", v.stdout);

    let forged = d.path().join("forged.wb");
    std::fs::write(&forged, text.replace("lambda: 1/2", "lambda: 2")).unwrap();
    let v = run(&["verify", "--cert", forged.to_str().unwrap()]);
    assert_eq!((v.code, v.first()), (1, "FAIL"), "{}", v.stdout);
}

#[test]
fn check_sss_cap_confirms_non_membership() {
    let r = run(&["check-sss", "--set", &data("cusp.wb"), "--kmax", "5", "--cap", "64"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("j in <g> up to k=64: NOT-MEMBER"), "{}", r.stdout);
}

#[test]
fn check_sss_verdicts() {
    let r = run(&["check-sss", "--set", &data("triangle.wb")]);
    assert_eq!((r.code, r.first()), (0, "SSS"));
    let r = run(&["check-sss", "--set", &data("pell.wb")]);
    assert_eq!((r.code, r.first()), (0, "SSS"));
    let r = run(&["check-sss", "--set", &data("pell3.wb")]);
    assert_eq!((r.code, r.first()), (4, "UNKNOWN"));
    let r = run(&["check-sss", "--set", &data("empty.wb")]);
    assert_eq!(r.code, 5);
    let d = TempDir::new().unwrap();
    let bad = write(&d, "bad.wb", "closedset x {\n  arity: 2\n  polytope: (0,0\n}\n");
    assert_eq!(run(&["check-sss", "--set", &bad]).code, 2);
}

#[test]
fn tangent_scan_lines() {
    let r = run(&["tangent-scan", "--set", &data("cusp.wb")]);
    assert_eq!(r.stdout, "x=(0,0) u=(1,0) RATIONAL OUTGOING λ=1/2\n");
    let r = run(&["tangent-scan", "--set", &data("pell.wb")]);
    assert!(r.first().ends_with("IRRATIONAL (minimal poly λ^2-2λ-1)"), "{}", r.stdout);
    let r = run(&["tangent-scan", "--set", &data("triangle.wb")]);
    assert_eq!(r.stdout, "no sequence witnesses\n");
    let d = TempDir::new().unwrap();
    let svg = d.path().join("x.svg");
    let r = run(&["tangent-scan", "--set", &data("pell3.wb"), "--svg", svg.to_str().unwrap()]);
    assert_eq!(r.code, 6);
    assert!(!svg.exists());
}

#[test]
fn ideal_member_golden() {
    let d = TempDir::new().unwrap();
    let cert = d.path().join("m.wb");
    let r = run(&[
        "ideal-member",
        "--f",
        &data("double.formula"),
        "--g",
        &data("id.formula"),
        "--set",
        &data("unit.wb"),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!((r.code, r.first()), (0, "MEMBER k=2"), "{}", r.stderr);
    assert!(r.stdout.contains("cover: 3 entries, m=2"));
    let v = run(&["verify", "--cert", cert.to_str().unwrap()]);
    assert_eq!((v.code, v.first()), (0, "OK"), "{}", v.stdout);

    let r = run(&["ideal-member", "--f", &data("zero.formula"), "--g", &data("id.formula"), "--set", &data("unit.wb")]);
    assert_eq!((r.code, r.first()), (0, "MEMBER k=0"));
}

#[test]
fn ideal_member_cusp_pair() {
    let d = TempDir::new().unwrap();
    let w = d.path().join("w.wb");
    run(&["check-sss", "--set", &data("cusp.wb"), "--kmax", "3", "--emit-witness", w.to_str().unwrap()]);
    let w = w.to_str().unwrap();
    let cert = d.path().join("n.wb");
    let r = run(&[
        "ideal-member",
        "--f",
        &format!("{w}#j"),
        "--g",
        &format!("{w}#g"),
        "--set",
        w,
        "--cap",
        "1024",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!((r.code, r.first()), (1, "NOT-MEMBER"), "{}", r.stderr);
    assert_eq!(r.stdout.lines().filter(|l| l.trim_start().starts_with("k=")).count(), 11);
    let v = run(&["verify", "--cert", cert.to_str().unwrap()]);
    assert_eq!(v.code, 0, "{}", v.stdout);
}

#[test]
fn threads_env_does_not_change_output() {
    let a = run(&["tangent-scan", "--set", &data("pell.wb")]);
    let b = Command::new(env!("CARGO_BIN_EXE_mcnaughton"))
        .args(["tangent-scan", "--set", &data("pell.wb")])
        .env("WORKBENCH_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, String::from_utf8_lossy(&b.stdout));
}
