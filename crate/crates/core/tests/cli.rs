use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn exrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exrep")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("exrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn enumerate_ces_matches_golden() {
    let o = exrep(&["enumerate", "ces", &fixture("kA3_alpha.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("ces_kA3_alpha.txt"));
    assert!(stdout(&o).starts_with("9 complete exceptional sequences"));
}

#[test]
fn ext_on_the_cycle_matches_golden() {
    let o = exrep(&["ext", &fixture("cycle3.alg"), "thin:1", "thin:1", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("ext_cycle3.txt"));
    assert!(stdout(&o).contains("Ext^3 = 1"));
}

#[test]
fn resolve_matches_golden() {
    let o = exrep(&["resolve", &fixture("cycle3.alg"), "simple:1", "--steps", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("resolve_cycle3.txt"));
}

#[test]
fn split_verify_matches_golden() {
    let args = ["split-ext", "verify", &fixture("cycle3_ab.alg"), "--kernel-arrows", "gamma", "--json"];
    let o = exrep(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("split_cycle3_ab.json"));
}

#[test]
fn split_theorem_on_row_a_matches_golden() {
    let row = fixture("table/row_a.seq");
    let o = exrep(&["check", "thm-split", &fixture("kA3.alg"), "--kernel-arrows", "alpha", &row, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("thm_split_row_a.json"));
}

#[test]
fn failed_hypothesis_exits_two() {
    let seq = scratch("simple1.seq", "thin:1\n");
    let o = exrep(&["check", "thm-split", &fixture("cycle3.alg"), "--kernel-arrows", "gamma", &seq, "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "hypothesis-failed");
    assert_eq!(v["payload"]["hypotheses"][1]["id"], "2");
    assert_eq!(v["payload"]["hypotheses"][1]["holds"], false);
}

#[test]
fn negative_sequence_verdict_exits_two() {
    let seq = scratch("twice.seq", "simple:1\nsimple:1\n");
    let o = exrep(&["check", "seq", &fixture("kA3.alg"), &seq]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("witness E1' i=1 j=2"));
}

#[test]
fn not_split_exits_two() {
    let alg = scratch(
        "square.alg",
        "algebra S\nvertices 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b - c*d\n",
    );
    let o = exrep(&["split-ext", "verify", &alg, "--kernel-arrows", "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("does not split"));
}

#[test]
fn input_errors_exit_one() {
    let cases: Vec<Vec<String>> = vec![
        vec!["hom".into(), fixture("kA3.alg"), "thin:9".into(), "thin:1".into()],
        vec!["hom".into(), fixture("missing.alg"), "thin:1".into(), "thin:1".into()],
        vec!["tensor".into(), fixture("kA3.alg"), "thin:1".into(), "--kernel-arrows".into(), "delta".into()],
        vec!["tensor".into(), fixture("kA3.alg"), "thin:1".into()],
        vec!["recollement".into(), "laws".into(), fixture("kA3.alg"), "--idempotent".into(), "7".into()],
        vec!["ext".into(), fixture("kA3.alg"), "thin:1".into(), "thin:1".into(), "--field".into(), "F4".into()],
        vec!["no-such-command".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = exrep(&refs);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn malformed_algebra_reports_position() {
    let alg = scratch("bad.alg", "algebra B\nvertices 1 2\narrow a 1 3\n");
    let o = exrep(&["algebra", "info", &alg, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "error");
    assert!(v["payload"]["error"].as_str().unwrap().starts_with("line 3"));
}

#[test]
fn budget_exhaustion_is_an_error() {
    let o = exrep(&["enumerate", "bricks", &fixture("kA3.alg"), "--budget", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("partial"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["enumerate", "ces", &fixture("kA3.alg"), "--json"];
    let (a, b) = (exrep(&args), exrep(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["payload"]["count"], 16);
}

#[test]
fn out_flag_writes_file() {
    let out = scratch("hom.json", "");
    let o = exrep(&["hom", &fixture("kA3.alg"), "proj:1", "thin:1", "--json", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["payload"]["hom_dim"], 1);
}

#[test]
fn field_flag_changes_arithmetic() {
    let o = exrep(&["ext", &fixture("cycle3.alg"), "thin:1", "thin:1", "--max-n", "3", "--field", "F3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["dims"], serde_json::json!([1, 0, 0, 1]));
}

#[test]
fn recollement_commands() {
    let o = exrep(&["recollement", "laws", &fixture("kA3.alg"), "--idempotent", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("i^* exact: true\ni^! exact: false"));
    let o = exrep(&["recollement", "map", &fixture("kA3.alg"), "simple:1", "--idempotent", "1", "--functor", "j_!"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("j_! sends [1] to [1, 1, 1]"));
    let closed = scratch("closed.seq", "thin:3\nthin:2\n");
    let open = scratch("open.seq", "thin:1\n");
    let o = exrep(&["recollement", "thm", &fixture("kA3.alg"), &closed, &open, "--idempotent", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("implication HypothesesNotMet"));
}

#[test]
fn algebra_and_module_summaries() {
    let o = exrep(&["algebra", "info", &fixture("cycle3_ab.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension 9"));
    let module = scratch("m.mod", "module M over R\ndim 1 1 0\nmap alpha [[1]]\nend\n");
    let o = exrep(&["module", "check", &fixture("kA3.alg"), &module]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("brick"));
    let bad = scratch("bad.mod", "module M over Other\ndim 1 1 0\nend\n");
    assert_eq!(exrep(&["module", "check", &fixture("kA3.alg"), &bad]).status.code(), Some(1));
}

#[test]
fn tensor_functors() {
    let o = exrep(&["tensor", &fixture("kA3.alg"), "thin:1", "--kernel-arrows", "alpha", "--functor", "tensor-q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tensor-q sends [1, 0, 0] to [0, 1, 1]"));
    let o = exrep(&["tensor", &fixture("kA3.alg"), "thin:1,2,3", "--kernel-arrows", "alpha", "--functor", "tensor-down"]);
    assert!(stdout(&o).starts_with("tensor-down sends [1, 1, 1] to [1, 0, 0]"), "{}", stdout(&o));
}

#[test]
fn reproduce_matrix_names_failing_criteria() {
    let o = exrep(&["reproduce-paper", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let criteria = v["payload"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 9);
    let failed = v["payload"]["failed"].as_array().unwrap();
    let code = o.status.code();
    assert_eq!(code, Some(if failed.is_empty() { 0 } else { 1 }));
}
