use std::path::Path;
use std::process::Command;

fn lhott(args: &[&str]) -> (i32, String, String) {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden");
    let out = Command::new(env!("CARGO_BIN_EXE_lhott"))
        .args(args)
        .current_dir(golden)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn success_and_output() {
    let (code, out, _) = lhott(&["run", "matrix.lh"]);
    assert_eq!(code, 0);
    assert!(out.contains("[17, 39]\n"));
    let (code, out, _) = lhott(&["check", "gauge.lh"]);
    assert_eq!((code, out.as_str()), (0, "ok: 3 declarations, 7 commands\n"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(lhott(&["frobnicate"]).0, 1);
    assert_eq!(lhott(&["run", "no-such-file.lh"]).0, 1);
    assert_eq!(lhott(&["dw", "Q8", "--genus", "1"]).0, 1);
    assert_eq!(lhott(&["--help"]).0, 0);
}

#[test]
fn error_classes() {
    assert_eq!(lhott(&["run", "err_parse.lh"]).0, 2);
    assert_eq!(lhott(&["run", "err_name.lh"]).0, 3);
    assert_eq!(lhott(&["run", "err_type.lh"]).0, 3);
    let (code, out, err) = lhott(&["run", "err_size.lh"]);
    assert_eq!((code, out.as_str()), (5, "3\n"));
    assert!(err.starts_with("error: size limit"));
    assert_eq!(lhott(&["--limit", "10", "dw", "Z2", "--genus", "2"]).0, 5);
}

#[test]
fn dw_subcommand() {
    assert_eq!(lhott(&["dw", "S3", "--genus", "1"]), (0, "3\n".into(), String::new()));
    let (code, out, _) = lhott(&["--format", "json", "dw", "Z2", "--genus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"result\":\"8\",\"statement\":\"dw Z2 genus 2\"}\n");
}

#[test]
fn json_errors_carry_positions() {
    let (code, _, err) = lhott(&["--format", "json", "run", "err_parse.lh"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["position"]["line"], 2);
    assert_eq!(v["position"]["column"], 7);
}

#[test]
fn axioms_and_fmt() {
    let (code, out, _) = lhott(&["axioms", "axioms.lh"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.ends_with("triangle=ok frobenius=ok de-morgan=ok beck-chevalley=ok")));
    assert!(out.starts_with("axioms t sign two: "));
    let (code, out, _) = lhott(&["fmt", "matrix.lh"]);
    assert_eq!(code, 0);
    assert_eq!(lhott_cli::parse(&out).unwrap(), lhott_cli::parse(include_str!("golden/matrix.lh")).unwrap());
}
