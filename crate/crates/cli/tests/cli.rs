use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qhyp(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qhyp"));
    c.args(args);
    match cache {
        Some(dir) => c.env("QHYP_CACHE_DIR", dir),
        None => c.env_remove("QHYP_CACHE_DIR"),
    };
    c.output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = qhyp(&all, None);
    let v = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn counterexample_k_exits_negative() {
    let d = tempfile::tempdir().unwrap();
    let k = write(
        d.path(),
        "k.json",
        r#"{"kind":"hnn","generators":["a","b"],"u":["aa"],"v":["bb"]}"#,
    );
    let (code, v) = run_json(&["check-hnn", &k]);
    assert_eq!(code, 1);
    assert_eq!(v["outcome"], "not-hyperbolic");
    assert_eq!(v["citation"], "Corollary 1");
}

#[test]
fn verdict_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let sep = write(
        d.path(),
        "s.json",
        r#"{"kind":"hnn","generators":["a","b"],"u":["ab"],"v":["aab"]}"#,
    );
    assert_eq!(run_json(&["check-hnn", &sep]).0, 0);
    let inc = write(
        d.path(),
        "i.json",
        r#"{"kind":"hnn","generators":["a","b"],"u":["a","bab"],"v":["b","aba"]}"#,
    );
    let (code, v) = run_json(&["check-hnn", &inc]);
    assert_eq!(
        (code, v["outcome"].as_str()),
        (2, Some("hypotheses-fail-inconclusive"))
    );
    let am = write(
        d.path(),
        "am.json",
        r#"{"kind":"amalgam","left":{"generators":["x"]},"right":{"generators":["y"]},"u":["xx"],"v":["yyy"]}"#,
    );
    let (code, v) = run_json(&["check-amalgam", &am]);
    assert_eq!((code, v["citation"].as_str()), (1, Some("Corollary 2")));
}

#[test]
fn input_errors_exit_3() {
    let d = tempfile::tempdir().unwrap();
    let bad = write(
        d.path(),
        "bad.json",
        r#"{"kind":"hnn","generators":["a"],"u":["a"],"w":["a"]}"#,
    );
    let (code, v) = run_json(&["check-hnn", &bad]);
    assert_eq!((code, v["error"]["code"].as_str()), (3, Some("schema")));
    let (code, v) = run_json(&["qword", "normalize", "(a"]);
    assert_eq!((code, v["error"]["code"].as_str()), (3, Some("syntax")));
    let (code, v) = run_json(&["qword", "normalize", "a^(1/0)"]);
    assert_eq!(
        (code, v["error"]["code"].as_str()),
        (3, Some("zero-denominator"))
    );
    assert_eq!(qhyp(&["no-such-command"], None).status.code(), Some(3));
    let (code, _) = run_json(&["check-hnn", "/nonexistent/file.json"]);
    assert_eq!(code, 3);
}

#[test]
fn resource_cap_exits_4() {
    let (code, v) = run_json(&["vn", "list", "--n", "4"]);
    assert_eq!(
        (code, v["error"]["code"].as_str()),
        (4, Some("resource-cap"))
    );
}

#[test]
fn area_absent_within_bound_exits_2() {
    let d = tempfile::tempdir().unwrap();
    let p = write(
        d.path(),
        "p.json",
        r#"{"generators":["a"],"relators":["aaa"]}"#,
    );
    let (code, v) = run_json(&["word", "area", &p, "aaaaaa", "--area-bound", "3"]);
    assert_eq!((code, v["area"].as_u64()), (0, Some(2)));
    let (code, v) = run_json(&["word", "area", &p, "aaaaaa", "--area-bound", "1"]);
    assert_eq!((code, v["area"].is_null()), (2, true));
}

#[test]
fn qword_commands() {
    let (code, v) = run_json(&["qword", "equal", "a^(2/2)", "a"]);
    assert_eq!((code, v["equal"].as_bool()), (0, Some(true)));
    let (code, _) = run_json(&["qword", "equal", "a^(1/2)", "b^(1/2)"]);
    assert_eq!(code, 1);
    let (code, v) = run_json(&["qword", "conj", "b a^(1/2) b^(-1)", "a^(1/2)"]);
    assert_eq!((code, v["certificate"].as_str()), (0, Some("b")));
    let (code, v) = run_json(&["qword", "conj", "a", "b"]);
    assert_eq!((code, v["result"].as_str()), (1, Some("proven-distinct")));
    let (_, v) = run_json(&["qword", "normalize", "(ab)^(3/2)"]);
    assert_eq!(v["canonical"], "(ab)^(1/2)ab");
    assert_eq!(v["level"], 2);
}

#[test]
fn word_and_subgroup_commands() {
    let (code, v) = run_json(&["word", "conj", "ab", "ba"]);
    assert_eq!((code, v["conjugator"].as_str()), (0, Some("a")));
    assert_eq!(run_json(&["word", "conj", "a", "b"]).0, 1);
    let (_, v) = run_json(&["word", "root", "ababab"]);
    assert_eq!(
        (v["root"].as_str(), v["exponent"].as_u64()),
        (Some("ab"), Some(3))
    );
    let (code, v) = run_json(&["subgroup", "malnormal", "aa"]);
    assert_eq!((code, v["witness"]["x"].as_str()), (1, Some("a")));
    assert_eq!(run_json(&["subgroup", "malnormal", "ab", "aab"]).0, 0);
    assert_eq!(run_json(&["subgroup", "member", "abba", "ab", "ba"]).0, 0);
    assert_eq!(run_json(&["subgroup", "member", "a", "ab", "ba"]).0, 1);
    let (_, v) = run_json(&["subgroup", "build", "ab", "ba"]);
    assert_eq!(v["rank"], 2);
    let (_, v) = run_json(&["subgroup", "qc-const", "aab"]);
    assert_eq!(v["epsilon"], 1);
}

#[test]
fn tower_commands() {
    let d = tempfile::tempdir().unwrap();
    let t = write(
        d.path(),
        "t.json",
        r#"{"kind":"tower","generators":["a","b"],"steps":[{"v":"ab","m":2,"root":"w"}]}"#,
    );
    let (_, v) = run_json(&["tower", "show", &t]);
    assert_eq!(v["presentation"], "<a,b,w | ab = w^2>");
    let (_, v) = run_json(&["tower", "reduce", &t, "w w"]);
    assert_eq!(v["canonical"], "ab");
    let (code, v) = run_json(&["tower", "conj", &t, "w", "W"]);
    assert_eq!((code, v["result"].as_str()), (1, Some("proven-distinct")));
    let bad = write(
        d.path(),
        "bad.json",
        r#"{"kind":"tower","generators":["a","b"],"steps":[{"v":"abab","m":2,"root":"w"}]}"#,
    );
    let (code, v) = run_json(&["tower", "show", &bad]);
    assert_eq!(
        (code, v["error"]["code"].as_str()),
        (3, Some("not-primitive"))
    );
}

#[test]
fn output_is_byte_identical_and_cache_is_reused() {
    let d = tempfile::tempdir().unwrap();
    let args = ["--json", "vn", "list", "--n", "3"];
    let first = qhyp(&args, Some(d.path()));
    assert!(first.status.success());
    assert!(d.path().join("vtables-ab.json").exists());
    let second = qhyp(&args, Some(d.path()));
    let third = qhyp(&args, None);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, third.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    let n = v["entries"].as_array().unwrap().len() as u64;
    assert_eq!(
        v["generators"].as_u64(),
        Some(v["generators_previous"].as_u64().unwrap() + n)
    );
}

#[test]
fn arguments_from_files() {
    let d = tempfile::tempdir().unwrap();
    let w = write(d.path(), "w.txt", "(ba)^(1/2)\n");
    let (code, v) = run_json(&["qword", "conj", &format!("@{w}"), "(ab)^(1/2)"]);
    assert_eq!((code, v["result"].as_str()), (0, Some("conjugate")));
}

#[test]
fn human_output() {
    let out = qhyp(&["vn", "list", "--n", "2"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("entries: a, b, ab, aB"), "{text}");
}
