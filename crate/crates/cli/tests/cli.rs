use std::path::{Path, PathBuf};
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn esakia(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_esakia")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gen(dir: &Path, family: &str, n: &str) -> PathBuf {
    let r = esakia(&["gen", family, n]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    write(dir, &format!("{family}-{n}.json"), &r.stdout)
}

const D4: &str = r#"{"name":"D4","points":["r","a","b","t"],"leq":[["r","a"],["r","b"],["a","t"],["b","t"]]}"#;
const C2: &str = r#"{"name":"C2","points":["r","m"],"leq":[["r","m"]]}"#;

#[test]
fn check_regular_on_delta0() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = gen(dir.path(), "delta0", "2");
    let r = esakia(&["check-regular", f2.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next().unwrap(), "regular: yes (structural=yes, sim-infty=yes, algebraic=yes)");
    let c2 = write(dir.path(), "c2.json", C2);
    let r = esakia(&["--json", "check-regular", c2.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(r.code, 0);
    assert_eq!(v["structural"], false);
    assert_eq!(v["bruteforce"], false);
    assert_eq!(v["agree"], true);
}

#[test]
fn double_negation_elimination_is_negatively_valid() {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        write(dir.path(), "d4.json", D4),
        write(dir.path(), "c2.json", C2),
        gen(dir.path(), "medvedev", "3"),
        gen(dir.path(), "ladder", "4"),
    ];
    for f in &files {
        let r = esakia(&["validate", f.to_str().unwrap(), "--formula", "~~p -> p", "--dna"]);
        assert_eq!((r.code, r.stdout.as_str()), (0, "valid: ~~p -> p\n"), "{}", f.display());
    }
    let r = esakia(&["validate", files[1].to_str().unwrap(), "--formula", "~~p -> p"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("refuted at"));
}

#[test]
fn validate_reads_algebras_and_formula_files() {
    let dir = tempfile::tempdir().unwrap();
    let forms = write(dir.path(), "f.txt", "# classical laws\np | ~p\n\n~~p -> p\n");
    let alg = write(
        dir.path(),
        "alg.json",
        r#"{"base": {"points": ["r","m"], "leq": [["r","m"]]}, "elements": [[], ["r","m"]]}"#,
    );
    let r = esakia(&["--json", "validate", alg.to_str().unwrap(), "--formulas", forms.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
}

#[test]
fn team_validation() {
    let r = esakia(&["validate", "--team", "1", "--formula", "p (+) ~p", "--formula", "p | ~p"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "valid: p (+) ~p\ninvalid: p | ~p\n");
}

#[test]
fn quotient_of_diamond_is_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.json", D4);
    let r = esakia(&["--json", "quotient", d4.to_str().unwrap(), "--n", "inf"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["quotient"]["points"].as_array().unwrap().len(), 1);
    assert_eq!(v["p_morphism"], true);
    let r = esakia(&["quotient", d4.to_str().unwrap(), "--n", "0"]);
    assert!(r.stdout.starts_with("classes: 1\n"));
    assert_eq!(esakia(&["quotient", d4.to_str().unwrap(), "--n", "x"]).code, 2);
}

#[test]
fn usage_errors_exit_two() {
    let r = esakia(&["frobnicate"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("Usage"));
    assert_eq!(esakia(&["dual", "--nope", "x.json"]).code, 2);
    assert_eq!(esakia(&["dual", "/nonexistent/poset.json"]).code, 2);
    assert_eq!(esakia(&["gen", "medvedev", "9"]).code, 2);
    assert_eq!(esakia(&[]).code, 2);
    assert_eq!(esakia(&["--help"]).code, 0);
}

#[test]
fn antichain_and_leq() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = write(dir.path(), "c2.json", C2);
    let d4 = write(dir.path(), "d4.json", D4);
    let r = esakia(&["antichain", c2.to_str().unwrap(), d4.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("C2 <= D4"));
    let f2 = gen(dir.path(), "delta0", "2");
    let f3 = gen(dir.path(), "delta0", "3");
    let r = esakia(&["--json", "antichain", f2.to_str().unwrap(), f3.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["is_antichain"], true);
    let r = esakia(&["leq", c2.to_str().unwrap(), d4.to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.lines().next().unwrap()), (0, "leq: yes"));
    let r = esakia(&["leq", d4.to_str().unwrap(), c2.to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "leq: no\n"));
}

#[test]
fn jankov_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", r#"{"name":"V","points":["r","a","b"],"leq":[["r","a"],["r","b"]]}"#);
    let a = esakia(&["--json", "jankov", v.to_str().unwrap()]);
    let b = esakia(&["--json", "jankov", v.to_str().unwrap()]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let j: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(j["atom_map"].as_object().unwrap().len(), 4);
    assert!(j["chi"].as_str().unwrap().ends_with("-> p_1 | p_2"));
    let c2 = write(dir.path(), "c2.json", C2);
    let r = esakia(&["jankov", c2.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("no Jankov representative"));
}

#[test]
fn every_subcommand_has_json_mode() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.json", D4);
    let v = write(dir.path(), "v.json", r#"{"name":"V","points":["r","a","b"],"leq":[["r","a"],["r","b"]]}"#);
    let d = d4.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "delta1", "3"],
        vec!["gen", "starify", "3"],
        vec!["gen", "starify", "0", "--from", d],
        vec!["dual", d],
        vec!["check-regular", d],
        vec!["quotient", d, "--n", "1"],
        vec!["validate", d, "--formula", "p -> p"],
        vec!["jankov", v.to_str().unwrap()],
        vec!["leq", d, d],
        vec!["antichain", d],
        vec!["dot", d],
    ];
    for args in runs {
        let mut full = vec!["--json"];
        full.extend(&args);
        let r = esakia(&full);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        assert_eq!(r.stdout.lines().count(), 1, "{args:?}");
        serde_json::from_str::<serde_json::Value>(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn starify_output_is_strongly_regular() {
    let dir = tempfile::tempdir().unwrap();
    let s = gen(dir.path(), "starify", "3");
    let r = esakia(&["check-regular", s.to_str().unwrap()]);
    assert!(r.stdout.contains("strongly regular: yes"));
    let r = esakia(&["dual", s.to_str().unwrap()]);
    assert!(r.stdout.contains("regularly generated: yes"));
}

#[test]
fn dot_lists_covers() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.json", D4);
    let r = esakia(&["dot", d4.to_str().unwrap()]);
    assert!(r.stdout.starts_with("digraph"));
}
