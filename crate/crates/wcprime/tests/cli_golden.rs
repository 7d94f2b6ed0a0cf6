use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn wcprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcprime")).args(args).output().expect("wcprime runs")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares stdout with a golden file; `WCPRIME_BLESS=1` rewrites it.
fn assert_golden(name: &str, args: &[&str]) {
    let out = wcprime(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let path = golden(name);
    if std::env::var_os("WCPRIME_BLESS").is_some() {
        fs::write(&path, &out.stdout).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), want, "{name}");
}

#[test]
fn classify_goldens() {
    assert_golden("classify_z4_zero.json", &["classify", "--spec", "ring=ZZ; mod=ab(4); sub=sub()"]);
    assert_golden("classify_z4_zero.md", &["classify", "--spec", "ring=ZZ; mod=ab(4); sub=sub()", "--format", "md"]);
    assert_golden("classify_z8_four.json", &["classify", "--spec", "ring=ZZ; mod=ab(8); sub=sub(4)"]);
    assert_golden("classify_z2_z3_zero.json", &["classify", "--spec", "ring=ZZ; mod=ab(2,3); sub=sub()"]);
}

#[test]
fn verify_and_search_goldens() {
    assert_golden("search_wcp_not_cp.json", &["search", "--goal", "WCP_NOT_CP"]);
    assert_golden(
        "verify_z4_zero.json",
        &["verify", "--spec", "ring=Z4; mod=cyc(Z4;0); sub=sub()", "--theorem", "T_T2,T_PRODUCT3,T_FAITH"],
    );
    assert_golden(
        "verify_small.md",
        &["verify", "--bounds", "ringmax=4,modmax=8,arity=2", "--theorem", "T_MAIN,T_MAIN2,T_FAITH", "--format", "md"],
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| wcprime(args).status.code();
    assert_eq!(code(&["verify", "--theorem", "BOGUS"]), Some(3));
    assert_eq!(code(&["search", "--goal", "BOGUS"]), Some(3));
    assert_eq!(code(&["classify", "--spec", "ring=ZZ; mod=ab(4); sub=sub(1)"]), Some(2));
    assert_eq!(code(&["classify", "--spec", "ring=Z4; mod=cyc(Z4;1); sub=sub()"]), Some(2));
    assert_eq!(code(&["classify", "--spec", "ring=Z1; mod=cyc(Z1;0); sub=sub()"]), Some(3));
    assert_eq!(code(&["classify", "--spec", "ring=ZZ; mod=ab(4); sub=sub(7,"]), Some(3));
    assert_eq!(code(&["classify", "--bogus-flag"]), Some(3));
    assert_eq!(code(&["verify", "--bounds", "ringmax=0"]), Some(3));
    assert_eq!(code(&["verify", "--bounds", "ringmax=3,modmax=4", "--theorem", "T_MAIN"]), Some(0));
}

#[test]
fn parse_errors_report_position() {
    let out = wcprime(&["classify", "--spec", "ring=ZZ;\nmod=ab(4);\nsub=sob()"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err, "error: syntax error at line 3, column 5: expected `sub(`, found `s`\n");
}

#[test]
fn spec_from_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("z12.spec");
    fs::write(&spec, "# Z12 over itself\nring=Z12\nmod=cyc(Z12;0)\nsub=sub(8)\n").unwrap();
    let out = dir.path().join("report.json");
    let run = wcprime(&["classify", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    assert!(run.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["instance"], "ring=Z12; mod=cyc(Z12;0); sub=sub(8)");
    assert_eq!(v["submodule_order"], 3);
}

#[test]
fn enumerate_lists_submodules() {
    let out = wcprime(&["enumerate", "--spec", "ring=Z12; mod=cyc(Z12;0)"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let subs: Vec<&str> =
        v["submodules"].as_array().unwrap().iter().map(|s| s["submodule"].as_str().unwrap()).collect();
    assert_eq!(subs, ["sub()", "sub(6)", "sub(4)", "sub(3)", "sub(2)", "sub(1)"]);
    let out = wcprime(&["enumerate", "--bounds", "ringmax=4,modmax=4,arity=2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["modules"].as_array().unwrap().iter().any(|m| m["module"] == "cyc(Z4;0)"));
}
