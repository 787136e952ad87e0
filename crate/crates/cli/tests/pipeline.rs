use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ppattach");

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn ppattach(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("PPATTACH_CONFIG_DIR", root().join("data/en"))
        .env_remove("RUST_LOG")
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ppattach(args);
    assert!(
        out.status.success(),
        "{:?}: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Runs chunk, extract and train into `dir`; returns the model path.
fn build(dir: &Path) -> String {
    let corpus = root().join("data/en/mini_corpus.txt");
    let chunked = dir.join("chunked.txt");
    let tuples = dir.join("tuples.tsv");
    let model = dir.join("model.txt");
    let s = |p: &Path| p.to_str().unwrap().to_owned();
    ok(&["chunk", "--input", &s(&corpus), "--output", &s(&chunked)]);
    ok(&["extract", "--input", &s(&chunked), "--output", &s(&tuples)]);
    ok(&[
        "train",
        "--corpus",
        &s(&chunked),
        "--tuples",
        &s(&tuples),
        "--model",
        &s(&model),
    ]);
    assert_eq!(fs::read_to_string(&chunked).unwrap(), golden("mini_chunked.txt"));
    assert_eq!(fs::read_to_string(&tuples).unwrap(), golden("mini_tuples.tsv"));
    assert_eq!(fs::read_to_string(&model).unwrap(), golden("mini_model.txt"));
    s(&model)
}

fn test_set() -> String {
    root().join("data/en/mini_test.txt").to_str().unwrap().to_owned()
}

#[test]
fn golden_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let model = build(dir.path());
    for variant in ["baseline", "bigram", "interp"] {
        let report = ok(&[
            "eval",
            "--model",
            &model,
            "--test",
            &test_set(),
            "--variant",
            variant,
            "--report",
            "tsv",
        ]);
        assert_eq!(report, golden(&format!("mini_eval_{}.tsv", variant)), "{}", variant);
    }
    let predictions = ok(&[
        "classify",
        "--model",
        &model,
        "--input",
        &test_set(),
        "--variant",
        "interp",
    ]);
    assert_eq!(predictions, golden("mini_classify_interp.tsv"));
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    build(a.path());
    build(b.path());
    for f in ["chunked.txt", "tuples.tsv", "model.txt"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{}",
            f
        );
    }
}

#[test]
fn stdin_and_stdout_streams() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(BIN)
        .args(["chunk", "--input", "-", "--output", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"the/DT big/JJ shirt/NN ./.\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "shirt/NN ./.\n");
}

#[test]
fn baseline_needs_no_model() {
    let report = ok(&[
        "eval",
        "--test",
        &test_set(),
        "--variant",
        "baseline",
        "--report",
        "tsv",
    ]);
    assert_eq!(report, golden("mini_eval_baseline.tsv"));
}

#[test]
fn of_only_input_is_all_noun() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("of.txt");
    fs::write(
        &input,
        "ate slice of cake\nbought box of chocolates\nrose price of shares\n",
    )
    .unwrap();
    let model = build(dir.path());
    for variant in ["baseline", "bigram", "interp"] {
        let out = ok(&[
            "classify",
            "--model",
            &model,
            "--input",
            input.to_str().unwrap(),
            "--variant",
            variant,
        ]);
        let labels: Vec<_> = out.lines().map(|l| l.split('\t').nth(4).unwrap()).collect();
        assert_eq!(labels, vec!["N"; 3], "{}", variant);
    }
}

#[test]
fn compare_prints_table_and_p_value() {
    let dir = tempfile::tempdir().unwrap();
    let model = build(dir.path());
    let out = ok(&[
        "compare",
        "--model",
        &model,
        "--test",
        &test_set(),
        "--variant-a",
        "baseline",
        "--variant-b",
        "interp",
    ]);
    assert!(out.contains("discordant pairs: 2"), "{}", out);
    assert!(out.contains("p-value"), "{}", out);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let model = build(dir.path());

    assert_eq!(
        ppattach(&["eval", "--variant", "nope", "--test", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ppattach(&["eval", "--test", "/nonexistent/file", "--variant", "baseline"])
            .status
            .code(),
        Some(1)
    );

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "ok/NN\nmissingtag\n").unwrap();
    assert_eq!(
        ppattach(&["chunk", "--input", bad.to_str().unwrap()]).status.code(),
        Some(3)
    );

    let text = fs::read_to_string(&model).unwrap();
    let tampered = dir.path().join("tampered.txt");
    fs::write(&tampered, text.replacen("wash\t3", "wash\t4", 1)).unwrap();
    let out = ppattach(&[
        "eval",
        "--model",
        tampered.to_str().unwrap(),
        "--test",
        &test_set(),
        "--variant",
        "bigram",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let future = dir.path().join("future.txt");
    fs::write(&future, text.replacen("# format=1", "# format=2", 1)).unwrap();
    let out = ppattach(&[
        "eval",
        "--model",
        future.to_str().unwrap(),
        "--test",
        &test_set(),
        "--variant",
        "bigram",
    ]);
    assert_eq!(out.status.code(), Some(4));

    let out = ppattach(&[
        "eval",
        "--model",
        &model,
        "--test",
        &test_set(),
        "--variant",
        "bigram",
        "--k",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(
        ppattach(&["eval", "--test", &test_set(), "--variant", "interp"])
            .status
            .code(),
        Some(5)
    );
}

#[test]
fn version_names_format_versions() {
    let out = ok(&["--version"]);
    assert!(
        out.contains("model format 1") && out.contains("tuple format 1"),
        "{}",
        out
    );
}
