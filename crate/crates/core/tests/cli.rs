use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lprev::cli::{AnswerSetsRecord, RevisionRecord};
use tempfile::TempDir;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn lprev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lprev"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_prints_one_set_per_line() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p.lp", "a. b :- a, not c. c :- not b.\n");
    let out = lprev(&["solve", p(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{a, b}\n{a, c}\n");
}

#[test]
fn solve_exit_codes() {
    let dir = TempDir::new().unwrap();
    let none = write(dir.path(), "none.lp", "a :- not a.\n");
    let out = lprev(&["solve", p(&none)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "");

    let lit = write(dir.path(), "lit.lp", "a. -a.\n");
    assert_eq!(lprev(&["solve", p(&lit)]).status.code(), Some(3));

    let bad = write(dir.path(), "bad.lp", "a :- .\n");
    let out = lprev(&["solve", p(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.lp"));

    assert_eq!(
        lprev(&["solve", "/nonexistent/x.lp"]).status.code(),
        Some(1)
    );
    assert_eq!(lprev(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn revise_takes_lowest_priority_first() {
    let dir = TempDir::new().unwrap();
    let p1 = write(dir.path(), "p1.lp", "b. c :- not d.\n");
    let p2 = write(dir.path(), "p2.lp", "a :- not b.\n");
    let out = lprev(&["revise", p(&p1), p(&p2)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{a, c}\n");

    let reversed = lprev(&["revise", p(&p2), p(&p1)]);
    assert_eq!(stdout(&reversed), "{b, c}\n");
}

#[test]
fn revise_trace_json_carries_steps() {
    let dir = TempDir::new().unwrap();
    let p1 = write(dir.path(), "p1.lp", "b. c :- not d.\n");
    let p2 = write(dir.path(), "p2.lp", "a :- not b.\n");
    let out = lprev(&["revise", p(&p1), p(&p2), "--json", "--trace"]);
    let record: RevisionRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record.result.status, "sets");
    let traces = record.traces.unwrap();
    assert_eq!(traces.len(), 1);
    let steps = &traces[0].steps;
    assert_eq!(
        steps.iter().map(|s| s.index).collect::<Vec<_>>(),
        vec![2, 1]
    );
    assert_eq!(steps[0].minus, vec!["b"]);
    assert_eq!(steps[1].plus, vec!["a", "c"]);
    assert_eq!(steps[1].cumulative_minus, vec!["b", "d"]);

    let plain = lprev(&["revise", p(&p1), p(&p2), "--trace"]);
    assert!(stdout(&plain).starts_with("{a, c}\n% trace 1\n"));
}

#[test]
fn json_agrees_with_human_output() {
    let dir = TempDir::new().unwrap();
    for (i, text) in [
        "a. b :- a, not c. c :- not b.",
        "-a :- not a. b :- -a.",
        "a :- not a.",
        "a. -a.",
        "",
    ]
    .iter()
    .enumerate()
    {
        let f = write(dir.path(), &format!("{i}.lp"), text);
        let human = lprev(&["solve", p(&f)]);
        let json = lprev(&["solve", p(&f), "--json"]);
        assert_eq!(human.status.code(), json.status.code());
        let record: AnswerSetsRecord = serde_json::from_slice(&json.stdout).unwrap();
        let rendered: String = record
            .answer_sets
            .iter()
            .map(|s| format!("{{{}}}\n", s.join(", ")))
            .collect();
        assert_eq!(rendered, stdout(&human), "{text}");
    }
}

#[test]
fn output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let p1 = write(dir.path(), "p1.lp", "b. c. d :- b.\n");
    let p2 = write(dir.path(), "p2.lp", "a :- not b. a :- not c.\n");
    let first = lprev(&["revise", p(&p1), p(&p2), "--json", "--trace"]);
    for _ in 0..3 {
        assert_eq!(
            lprev(&["revise", p(&p1), p(&p2), "--json", "--trace"]).stdout,
            first.stdout
        );
    }
    let check = ["check", "--seed", "7", "--iters", "5", "--json"];
    assert_eq!(lprev(&check).stdout, lprev(&check).stdout);
}

#[test]
fn three_and_reducts() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p.lp", "a :- not b. a :- not c.\n");
    assert_eq!(
        stdout(&lprev(&["three", p(&f)])),
        "({a} ; {b})\n({a} ; {c})\n"
    );
    assert_eq!(
        stdout(&lprev(&["reduct", p(&f), "--set", "{a, b}"])),
        "a.\n"
    );
    assert_eq!(
        stdout(&lprev(&["minreduct", p(&f), "--plus", "a", "--minus", "b"])),
        "a.\na :- not c.\n"
    );
    let bad = lprev(&["minreduct", p(&f), "--plus", "a", "--minus", "a"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn remainder_and_se_eq() {
    let dir = TempDir::new().unwrap();
    let p1 = write(dir.path(), "p1.lp", "a. b.\n");
    let p2 = write(dir.path(), "p2.lp", ":- a, b.\n");
    let out = stdout(&lprev(&["remainder", p(&p1), p(&p2)]));
    assert_eq!(out.matches("% remainder").count(), 2);

    let q1 = write(dir.path(), "q1.lp", "a :- not b.\n");
    let q2 = write(dir.path(), "q2.lp", "a :- not b. a :- a.\n");
    assert_eq!(
        stdout(&lprev(&["se-eq", p(&q1), p(&q2)])),
        "strongly equivalent: true\nequivalent: true\n"
    );
}

#[test]
fn check_on_files_reports_a_witness() {
    let dir = TempDir::new().unwrap();
    let p1 = write(dir.path(), "p1.lp", "a. -a.\n");
    let p2 = write(dir.path(), "p2.lp", "p :- p.\n");
    let out = lprev(&["check", p(&p1), p(&p2), "--postulates", "tautology"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("tautology: fails"));
}
