//! End-to-end runs of the `lltile` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lltile(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lltile"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_comb() {
    let o = lltile(&["solve", "--tileset", "comb", "--window", "ball:4", "--seed", "e=tas"], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("SAT\n"));
    assert!(out.lines().any(|l| l == "(0;) 0"), "identity carries tas (tile 0)");
    // deterministic output
    assert_eq!(stdout(&lltile(&["solve", "--tileset", "comb", "--window", "ball:4", "--seed", "e=tas"], "")), out);
}

#[test]
fn unsat_and_errors() {
    let o = lltile(&["solve", "--tileset", "comb", "--window", "ball:1", "--seed", "e=tas", "--seed", "e=tts"], "");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lltile(&["solve", "--tileset", "nope", "--window", "ball:1"], "").status.code(), Some(2));
    assert_eq!(lltile(&["solve", "--window", "ball:1"], "").status.code(), Some(2));
    assert_eq!(lltile(&["solve", "--tileset", "comb", "--window", "ball:2", "--limit", "1"], "").status.code(), Some(3));
}

#[test]
fn forced_spine() {
    let o = lltile(&["forced", "--tileset", "comb", "--window", "ball:5", "--seed", "e=tas", "--at", "aa"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{tas}\n");
}

#[test]
fn walk_east() {
    let o = lltile(&["walk"], "east\nnorth\nwest\nsouth\nsouth\n");
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "(0;)");
    assert_eq!(lines[1], "(0; 0)");
    assert_eq!(lines[2], "(0; -1, 0)");
    assert_eq!(lines[3], "(0; -1)");
    assert_eq!(lines[4], "(0;)");
    assert!(lines[5].starts_with("no S step"));
}

#[test]
fn simulate_grid() {
    let o = lltile(&["simulate", "--simulator", "builtin:quadrant_to_plane", "--window", "grid:7x7"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("host vertices 49 simulated vertices 169 "));
}

#[test]
fn dimacs_and_window() {
    let o = lltile(&["export-dimacs", "--tileset", "comb", "--window", "ball:1"], "");
    assert!(stdout(&o).lines().any(|l| l.starts_with("p cnf 30 ")));
    let o = lltile(&["window", "--window", "tetra:0:2"], "");
    assert!(stdout(&o).starts_with("vertices 12 "));
}

#[test]
fn reduce_halfplane() {
    let dir = std::env::temp_dir().join(format!("lltile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let t = dir.join("t.txt");
    std::fs::write(&t, "colors c\ntile c c c c\nseedtile 0\n").unwrap();
    let out = dir.join("pi.txt");
    let o = lltile(&["reduce", "--tileset", t.to_str().unwrap(), "--out", out.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = lltile(&["solve", "--tileset", out.to_str().unwrap(), "--window", "ball:3"], "");
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_dl_suite() {
    let o = lltile(&["verify", "dl"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS] 15 "));
}
