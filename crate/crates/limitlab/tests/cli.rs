use std::io::Write;

use limitlab::cli::run_with;
use serde_json::Value;

fn limitlab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("limitlab").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn program_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn enum_prints_a_level() {
    let (code, out, _) = limitlab(&["enum", "--len", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "00\n01\n10\n11\n");
    let (code, out, _) = limitlab(&["enum", "--len", "0"]);
    assert_eq!((code, out.as_str()), (0, "\n"));
}

#[test]
fn caps_give_runtime_errors() {
    let (code, out, err) = limitlab(&["enum", "--len", "99"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("CapExceeded"), "{err}");
    let (code, _, err) = limitlab(&["--cap-prog-len", "8", "k-table", "--max-prog-len", "10"]);
    assert_eq!(code, 1);
    assert!(err.contains("CapExceeded"));
    let (code, _, _) = limitlab(&["--cap-level", "4", "enum", "--len", "5"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["enum"][..],
        &["frobnicate"],
        &["real", "--bits", "4"],
        &["real", "--bits", "4", "--seed", "1", "--entropy", "os"],
        &["real", "--bits", "4", "--seed", "1", "--c", "1"],
        &["decide", "--string", "012", "--m", "3"],
        &["find", "--target", "x"],
        &["ak", "eval", "--formula", "p &"],
        &["ak", "eval", "--formula", "p", "--assign", "p=2"],
        &["halt", "arena", "--scenario", "nope"],
    ] {
        let (code, _, err) = limitlab(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn decide_and_filter() {
    let (code, out, _) = limitlab(&["decide", "--string", "0", "--m", "3"]);
    assert_eq!((code, out.as_str()), (0, "{\"noncompressible\":true}\n"));
    let (_, out, _) = limitlab(&["decide", "--string", "0", "--m", "4"]);
    assert_eq!(out, "{\"noncompressible\":false}\n");
    let (_, out, _) = limitlab(&["decide", "--string", "0", "--m", "3", "--c", "1"]);
    assert_eq!(out, "{\"noncompressible\":false}\n");
    let (_, out, _) = limitlab(&["filter", "--len", "1", "--m", "3"]);
    assert_eq!(out, "0\n1\n");
    let (_, out, _) = limitlab(&["filter", "--len", "1", "--m", "4"]);
    assert_eq!(out, "");
}

#[test]
fn square_reports_the_flipped_diagonal() {
    let (code, out, _) = limitlab(&["square", "--n", "4"]);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[3]["row"], "0011");
    let last = &lines[4];
    assert_eq!(last["antidiagonal"], "1100");
    assert_eq!(last["in_square"], false);
    assert_eq!(last["in_level"], true);
    let (code, _, _) = limitlab(&["square", "--n", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn k_table_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.ndjson");
    let (code, out, _) = limitlab(&[
        "k-table",
        "--max-prog-len",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    let table = limitlab::cli::load_table(&path).unwrap();
    assert_eq!(table.len(), 71);
    let (_, stdout_table, _) = limitlab(&["k-table", "--max-prog-len", "12"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout_table);
}

#[test]
fn census_lines_sum_to_the_level() {
    let (code, out, _) = limitlab(&["census", "--len", "6", "--max-prog-len", "6"]);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    let total: u64 = lines
        .iter()
        .map(|l| l.get("count").or(l.get("none")).unwrap().as_u64().unwrap())
        .sum();
    assert_eq!(total, 64);
    assert_eq!(lines.last().unwrap()["none"], 64);
}

#[test]
fn real_streams() {
    let (code, out, _) = limitlab(&["real", "--seed", "1", "--bits", "8"]);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[7]["prefix"], "11100111");
    assert!(lines.iter().all(|l| l["event"] == "emit"));
    let (_, filtered, _) = limitlab(&["real", "--seed", "1", "--bits", "8", "--m", "3"]);
    assert_eq!(filtered, out);
    let (code, out, _) = limitlab(&["real", "--entropy", "os", "--bits", "16"]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out).len(), 16);
}

#[test]
fn find_reports_the_rank() {
    let (_, out, _) = limitlab(&["find", "--target", "010"]);
    assert_eq!(json_lines(&out)[0]["step"], 9);
    let (_, out, _) = limitlab(&["find", "--target", ""]);
    assert_eq!(json_lines(&out)[0]["step"], 0);
}

#[test]
fn halt_run_and_test() {
    let looping = program_file("top: DECJZ r0 top\n");
    let path = looping.path().to_str().unwrap();
    let (code, out, _) = limitlab(&["halt", "run", path, "--budget", "100"]);
    assert_eq!(code, 0);
    let last = json_lines(&out).pop().unwrap();
    assert_eq!(last["outcome"], "cycle_detected");
    assert_eq!(last["first_step"], 1);
    let (_, out, _) = limitlab(&["halt", "test", path, "--budget", "100"]);
    assert_eq!(json_lines(&out)[0]["verdict"], "0");
    let (_, out, _) = limitlab(&["halt", "run", path, "--budget", "100", "--input", "r0=3"]);
    assert_eq!(json_lines(&out).pop().unwrap()["outcome"], "halted");

    let grow = program_file("# grows r0 forever\nL: INC r0\n   DECJZ r1 L\n");
    let path = grow.path().to_str().unwrap();
    let (code, out, err) = limitlab(&[
        "halt",
        "run",
        path,
        "--budget",
        "1000",
        "--heartbeat",
        "100",
    ]);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[0]["heartbeat"], 100);
    assert_eq!(lines[10]["warning"], "possible lack of halt");
    assert!(err.contains("possible lack of halt"));
    let (_, out, _) = limitlab(&["halt", "test", path, "--budget", "50"]);
    assert_eq!(json_lines(&out)[0]["verdict"], "unknown");

    let (code, _, err) = limitlab(&["halt", "run", path, "--budget", "0"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = limitlab(&["halt", "run", path, "--budget", "100000000"]);
    assert_eq!(code, 1);
    let bad = program_file("JMP r0\n");
    let (code, _, err) = limitlab(&["halt", "run", bad.path().to_str().unwrap(), "--budget", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("MalformedProgram"));
    let (code, _, _) = limitlab(&["halt", "run", "/nonexistent/prog", "--budget", "5"]);
    assert_eq!(code, 1);
}

#[test]
fn arena_scenarios() {
    let (code, out, _) = limitlab(&["halt", "arena", "--scenario", "classic"]);
    assert_eq!(code, 0);
    assert_eq!(
        json_lines(&out).pop().unwrap()["marker"],
        "contradiction_detected"
    );
    let (_, out, _) = limitlab(&["halt", "arena", "--scenario", "paper_escape"]);
    let last = json_lines(&out).pop().unwrap();
    assert_eq!(
        (last["verdict"].as_str(), last["by"].as_str()),
        (Some("0"), Some("T'"))
    );
    assert_eq!(last["t"], "running");
    let (_, out, _) = limitlab(&[
        "halt",
        "arena",
        "--scenario",
        "paper_escape",
        "--sequential",
        "--budget",
        "20",
    ]);
    assert_eq!(json_lines(&out).pop().unwrap()["marker"], "both_looping");
    let (_, out, _) = limitlab(&["halt", "arena", "--scenario", "classic", "--budget", "5"]);
    assert_eq!(json_lines(&out).pop().unwrap()["verdict"], "unknown");
}

#[test]
fn ak_eval() {
    let value = |args: &[&str]| json_lines(&limitlab(args).1)[0]["value"].clone();
    assert_eq!(value(&["ak", "eval", "--formula", "LIAR"]), "false");
    assert_eq!(
        value(&["ak", "eval", "--formula", "LIAR", "--mode", "kleene"]),
        "paradox"
    );
    assert_eq!(
        value(&["ak", "eval", "--formula", "LIAR | TRUE", "--mode", "kleene"]),
        "true"
    );
    assert_eq!(
        value(&["ak", "eval", "--formula", "LIAR | p", "--assign", "p=0"]),
        "false"
    );
    assert_eq!(
        value(&[
            "ak",
            "eval",
            "--formula",
            "p -> q -> p",
            "--assign",
            "p=1,q=0"
        ]),
        "true"
    );
    let (code, _, err) = limitlab(&["ak", "eval", "--formula", "p & q", "--assign", "p=1"]);
    assert_eq!(code, 1, "{err}");
}
