use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tlsf_core::emit::{parse_formula, LtlProfile};
use tlsf_core::frontend::parse_basic_spec;
use tlsf_core::ltl::is_nnf;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn tlsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlsf")).args(args).env_remove("TLSF_RECURSION_LIMIT").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_spec(dir: &tempfile::TempDir, name: &str, main: &str, global: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(
        &path,
        format!(
            "INFO {{\n  TITLE: \"t\"\n  DESCRIPTION: \"d\"\n  SEMANTICS: Mealy\n  TARGET: Mealy\n}}\n\
             GLOBAL {{\n{global}\n}}\nMAIN {{\n{main}\n}}\n"
        ),
    )
    .unwrap();
    path.display().to_string()
}

#[test]
fn arbiter_matches_golden_files() {
    let arbiter = fixture("arbiter.tlsf");
    let arbiter = arbiter.to_str().unwrap();
    let o = tlsf(&[arbiter]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("arbiter.n2.basic.tlsf")).unwrap());
    let o = tlsf(&[arbiter, "-p", "n=3", "-o", "basic"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("arbiter.n3.basic.tlsf")).unwrap());
    let o = tlsf(&[arbiter, "--param", "n = 3"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("arbiter.n3.basic.tlsf")).unwrap());
}

#[test]
fn formula_output_with_transformations() {
    let arbiter = fixture("arbiter.tlsf");
    let o = tlsf(&[arbiter.to_str().unwrap(), "-o", "formula", "-t", "nnf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let phi = parse_formula(text.trim_end(), &LtlProfile::tlsf()).unwrap();
    assert!(is_nnf(&phi));
    assert!(!text.contains("->"));

    let o = tlsf(&[
        arbiter.to_str().unwrap(),
        "-o",
        "formula",
        "-t",
        "expand-derived",
        "-t",
        "nnf",
        "--profile",
        "classic",
    ]);
    let text = stdout(&o);
    assert!(parse_formula(text.trim_end(), &LtlProfile::classic()).is_ok(), "{text}");
    assert!(!text.contains("&&"));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.tlsf");
    let arbiter = fixture("sets.tlsf");
    let first = tlsf(&[arbiter.to_str().unwrap(), "-O", out.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert!(first.stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(stdout(&tlsf(&[arbiter.to_str().unwrap()])), written);
    assert!(parse_basic_spec(&written).is_ok());
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tlsf"))
        .args(["-", "-p", "n=1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read_to_string(fixture("arbiter.tlsf")).unwrap().as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("    (true);"));
}

#[test]
fn target_and_semantics_overrides() {
    let arbiter = fixture("arbiter.tlsf");
    let o = tlsf(&[arbiter.to_str().unwrap(), "--target", "moore"]);
    let text = stdout(&o);
    assert!(text.contains("SEMANTICS:   Moore\n"));
    assert!(text.contains("TARGET:      Moore\n"));
    assert!(text.contains("(X (g@0))"));
    assert!(!text.contains("(X (r@0))"));

    let o = tlsf(&[arbiter.to_str().unwrap(), "--semantics", "moore-strict"]);
    assert!(stdout(&o).contains("SEMANTICS:   Moore,Strict\n"));

    let o = tlsf(&[arbiter.to_str().unwrap(), "--semantics", "mealy-strict", "-o", "formula"]);
    assert!(stdout(&o).starts_with("true -> "), "{}", stdout(&o));
}

#[test]
fn check_mode_lists_parameters_and_signals() {
    let o = tlsf(&[fixture("arbiter.tlsf").to_str().unwrap(), "--check", "-p", "n=5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("  n = 5\n"));
    assert!(text.contains("  r : bus of width 5\n"));
    assert!(text.contains("  reqres(signal, signal) : LTL\n"));
}

#[test]
fn input_errors_exit_with_one_and_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.tlsf", "INPUTS { a; }\nGUARANTEES { a && ; }", "", "syntax.tlsf:12:19:"),
        ("type.tlsf", "INPUTS { a; }\nGUARANTEES { 1 + a; }", "", "type.tlsf:12:18:"),
        ("range.tlsf", "OUTPUTS { g[2]; }\nGUARANTEES {\n  g[2];\n}", "", "range.tlsf:13:5:"),
        ("cycle.tlsf", "INPUTS { a; }", "DEFINITIONS { x = y; y = x; }", "cycle.tlsf:8:"),
        ("lexer.tlsf", "INPUTS { a; }\nGUARANTEES { a # a; }", "", "lexer.tlsf:12:16:"),
    ];
    for (name, main, global, location) in cases {
        let path = write_spec(&dir, name, main, global);
        let o = tlsf(&[&path]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        let err = stderr(&o);
        assert!(err.contains(location), "{name}: {err}");
        assert_eq!(err.lines().count(), 1, "{err}");
    }
    let o = tlsf(&["/definitely/not/here.tlsf"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tlsf(&[fixture("arbiter.tlsf").to_str().unwrap(), "-p", "n=0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    let arbiter = fixture("arbiter.tlsf");
    let arbiter = arbiter.to_str().unwrap();
    for args in [
        vec![arbiter, "-p", "m=1"],
        vec![arbiter, "-p", "n"],
        vec![arbiter, "-p", "n=-1"],
        vec![arbiter, "--target", "buchi"],
        vec![arbiter, "-o", "formula", "-t", "simplify"],
        vec![arbiter, "--profile", "spin"],
        vec![arbiter, "-t", "nnf"],
        vec![arbiter, "--frobnicate"],
        vec![],
    ] {
        let o = tlsf(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_tlsf")).arg(arbiter).env("TLSF_RECURSION_LIMIT", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn recursion_limit_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_spec(
        &dir,
        "deep.tlsf",
        "INPUTS { a; }\nGUARANTEES { sum(9000) > 0 -> a; }",
        "DEFINITIONS { sum(n) = n == 0 : 0 otherwise : n + sum(n - 1); }",
    );
    let o = tlsf(&[&path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_tlsf")).arg(&path).env("TLSF_RECURSION_LIMIT", "100").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("recursion limit of 100"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_tlsf")).arg(&path).env("TLSF_RECURSION_LIMIT", "20000").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn every_fixture_reduces_and_interprets() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        for mode in ["basic", "formula"] {
            let o = tlsf(&[path.to_str().unwrap(), "-o", mode]);
            assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), stderr(&o));
        }
    }
}
