use std::path::{Path, PathBuf};
use std::process::Command;

use roborun::cli::run_cli;
use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn roborun(args: &[&str]) -> Out {
    let out = Command::new(env!("CARGO_BIN_EXE_roborun")).args(args).output().unwrap();
    Out {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const FIVE: &str = r#"{"id":"demo","name":"Demo","width":5,"height":5,
  "start":{"x":0,"y":0,"facing":"E"},"goal":{"x":4,"y":0},"walls":[]}"#;
const CRASH: &str = r#"{"id":"crash","name":"Crash","width":3,"height":3,
  "start":{"x":0,"y":0,"facing":"E"},"goal":{"x":2,"y":2},"walls":[{"x":1,"y":0}]}"#;
const COLUMN: &str = r#"{"id":"col","name":"Column","width":3,"height":3,
  "start":{"x":0,"y":0,"facing":"E"},"goal":{"x":2,"y":2},
  "walls":[{"x":1,"y":0},{"x":1,"y":1},{"x":1,"y":2}]}"#;

#[test]
fn run_goal_and_crash() {
    let dir = tempfile::tempdir().unwrap();
    let five = write(dir.path(), "five.json", FIVE);
    let crash = write(dir.path(), "crash.json", CRASH);
    let m4 = write(dir.path(), "m4.robo", "move 4\n");
    let m2 = write(dir.path(), "m2.robo", "move 2\n");

    let out = roborun(&["run", "--level", &five, "--program", &m4]);
    assert_eq!(out.code, 0);
    let trace: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(trace["outcome"], "goal");
    assert_eq!(trace["steps"], 4);
    assert_eq!(trace["events"].as_array().unwrap().len(), 6);
    assert!(out.stdout.ends_with("}\n"));

    let out = roborun(&["run", "--level", &crash, "--program", &m2, "--trace", "json"]);
    assert_eq!(out.code, 3);
    let trace: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(trace["outcome"], "crash");
    assert_eq!(trace["events"][1], serde_json::json!({"e":"crashed","at":{"x":0,"y":0},"attempted":{"x":1,"y":0}}));

    let out = roborun(&["run", "--level", &five, "--program", &m4, "--trace", "pretty"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("GOAL"));
}

#[test]
fn run_limits_and_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let five = write(dir.path(), "five.json", FIVE);
    let spin = write(dir.path(), "spin.robo", "while not at_goal { left }");
    let bad = write(dir.path(), "bad.robo", "move 0");
    let far = write(dir.path(), "far.robo", "move 6");

    let out = roborun(&["run", "--level", &five, "--program", &spin, "--max-steps", "25"]);
    assert_eq!(out.code, 3);
    let trace: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(trace["outcome"], "step_limit");
    assert_eq!(trace["steps"], 25);

    let out = roborun(&["run", "--level", &five, "--program", &spin, "--max-steps", "0"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("E_LIMITS"));

    let out = roborun(&["run", "--level", &five, "--program", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("E_MOVE_RANGE"));
    assert!(out.stdout.is_empty());

    let out = roborun(&["run", "--level", &five, "--program", &far]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("E_MOVE_OOB"));

    let missing = dir.path().join("missing.json");
    let out = roborun(&["run", "--level", missing.to_str().unwrap(), "--program", &bad]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("E_IO"));

    let broken = write(dir.path(), "broken.json", "{");
    let out = roborun(&["run", "--level", &broken, "--program", &spin]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("E_JSON"));

    let out = roborun(&["run", "--level", &five]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("Usage"));
}

#[test]
fn score_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let five = write(dir.path(), "five.json", FIVE);
    let rep = write(dir.path(), "rep.robo", "repeat 4 { move 1 }");
    let out = roborun(&["score", "--level", &five, "--program", &rep, "--time-seconds", "30"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "{\"completion\":500,\"constructs\":100,\"brevity\":260,\"speed\":170,\"total\":1030,\"statements\":2,\"kinds\":[\"repeat\"]}\n"
    );

    let cfg = write(dir.path(), "scoring.toml", "completion = 1000\nper_construct = 0\n");
    let out = roborun(&["score", "--level", &five, "--program", &rep, "--time-seconds", "30", "--scoring", &cfg]);
    let s: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(s["total"], 1000 + 260 + 170);

    let typo = write(dir.path(), "typo.toml", "completin = 1\n");
    let out = roborun(&["score", "--level", &five, "--program", &rep, "--time-seconds", "1", "--scoring", &typo]);
    assert_eq!(out.code, 2);

    let out = roborun(&["score", "--level", &five, "--program", &rep, "--time-seconds", "-1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("E_TIME"));

    let short = write(dir.path(), "short.robo", "move 2");
    let out = roborun(&["score", "--level", &five, "--program", &short, "--time-seconds", "3"]);
    assert_eq!(out.code, 3);
    let s: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(s["total"], 0);
}

#[test]
fn export_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let m3 = write(dir.path(), "m3.robo", "move 3");
    let out = roborun(&["export", "--program", &m3, "--target", "pseudocode"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "go straight for 3 squares\n"));

    let out = roborun(&["export", "--program", &m3, "--target", "touchdevelop"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "action run_maze() {\n  robot->go_straight(3)\n}\n"));

    let out = roborun(&["export", "--program", &m3, "--target", "java"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("E_TARGET"));

    let column = write(dir.path(), "col.json", COLUMN);
    let out = roborun(&["check", "--level", &column]);
    assert_eq!((out.code, out.stdout.as_str()), (3, "unreachable\n"));

    let five = write(dir.path(), "five.json", FIVE);
    let out = roborun(&["check", "--level", &five]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("reachable"));

    let same = write(dir.path(), "same.json", &FIVE.replace(r#""x":4,"y":0"#, r#""x":0,"y":0"#));
    let out = roborun(&["check", "--level", &same]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("E_START_EQ_GOAL"));
}

#[test]
fn in_process_matches_binary() {
    let dir = tempfile::tempdir().unwrap();
    let five = write(dir.path(), "five.json", FIVE);
    let m4 = write(dir.path(), "m4.robo", "left right move 4");
    let args = ["roborun", "run", "--level", &five, "--program", &m4];
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = run_cli(args, &mut stdout, &mut stderr);
    let bin = roborun(&args[1..]);
    assert_eq!(code, bin.code);
    assert_eq!(String::from_utf8(stdout).unwrap(), bin.stdout);

    let code = run_cli(["roborun", "--help"], &mut Vec::new(), &mut Vec::new());
    assert_eq!(code, 0);
}
