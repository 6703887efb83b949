use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use arena_core::engine::Game;
use arena_core::games::LineGame;
use arena_core::{MatchRecord, PlayerSeat};
use tempfile::TempDir;

fn arena(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arena")).args(args).output().expect("spawn arena")
}

fn ok(args: &[&str]) -> Output {
    let out = arena(args);
    assert!(out.status.success(), "arena {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("arena.toml");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn lines(path: &Path) -> usize {
    fs::read_to_string(path).unwrap().lines().filter(|l| !l.trim().is_empty()).count()
}

const TWO_RANDOM: &str = r#"
games = ["tic_tac_toe"]
matches_per_pair = 20
base_seed = 11

[[agents]]
kind = "random"
id = "r1"

[[agents]]
kind = "random"
id = "r2"
"#;

#[test]
fn run_logs_every_match_and_resumes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), TWO_RANDOM);
    let logs = dir.path().join("logs");
    let logs_arg = logs.to_str().unwrap();
    ok(&["run", "--config", &cfg, "--out", logs_arg]);
    let file = logs.join("tic_tac_toe").join("r1__vs__r2.jsonl");
    assert_eq!(lines(&file), 20);
    let before = fs::read_to_string(&file).unwrap();

    let again = ok(&["run", "--config", &cfg, "--out", logs_arg]);
    assert!(String::from_utf8_lossy(&again.stderr).contains("0 new matches"));
    assert_eq!(fs::read_to_string(&file).unwrap(), before);

    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(logs.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["base_seed"], 11);
    assert_eq!(manifest["files"][0]["seeds"].as_array().unwrap().len(), 20);
}

#[test]
fn interrupted_run_fills_in_missing_matches() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), TWO_RANDOM);
    let logs = dir.path().join("logs");
    let logs_arg = logs.to_str().unwrap();
    ok(&["run", "--config", &cfg, "--out", logs_arg]);
    let file = logs.join("tic_tac_toe").join("r1__vs__r2.jsonl");
    let full = fs::read_to_string(&file).unwrap();
    let kept: Vec<&str> = full.lines().take(7).collect();
    fs::write(&file, kept.join("\n") + "\n").unwrap();

    ok(&["run", "--config", &cfg, "--out", logs_arg]);
    assert_eq!(lines(&file), 20);
    let mut a: Vec<&str> = full.lines().collect();
    let resumed = fs::read_to_string(&file).unwrap();
    let mut b: Vec<&str> = resumed.lines().collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn three_agents_on_every_game_write_one_file_per_pair() {
    let dir = TempDir::new().unwrap();
    let unknown = write_config(dir.path(), &TWO_RANDOM.replace("\"tic_tac_toe\"", "\"tic_tac_toe\", \"go\""));
    let out = arena(&["run", "--config", &unknown]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("go"));

    let cfg = write_config(
        dir.path(),
        r#"
games = ["othello", "pong", "surround", "checkers", "tic_tac_toe", "connect4", "texas_holdem", "negotiation"]
matches_per_pair = 2
base_seed = 3

[[agents]]
kind = "random"
id = "a"

[[agents]]
kind = "oracle_scripted"

[[agents]]
kind = "random"
id = "c"
"#,
    );
    let logs = dir.path().join("logs");
    ok(&["run", "--config", &cfg, "--out", logs.to_str().unwrap(), "--parallel", "2"]);
    let files: Vec<_> = walk(&logs).into_iter().filter(|p| p.extension().is_some_and(|e| e == "jsonl")).collect();
    assert_eq!(files.len(), 24);
    for f in &files {
        assert_eq!(lines(f), 2, "{}", f.display());
    }
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}

#[test]
fn scores_are_deterministic_and_reflect_the_agents() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"
games = ["tic_tac_toe", "pong"]
matches_per_pair = 4

[[agents]]
kind = "random"

[[agents]]
kind = "oracle_scripted"
"#,
    );
    let logs = dir.path().join("logs");
    let logs_arg = logs.to_str().unwrap();
    ok(&["run", "--config", &cfg, "--out", logs_arg]);
    let first = ok(&["score", logs_arg]).stdout;
    let csv = fs::read_to_string(logs.join("scores.csv")).unwrap();
    let second = ok(&["score", logs_arg]).stdout;
    assert_eq!(first, second);
    assert_eq!(csv, fs::read_to_string(logs.join("scores.csv")).unwrap());

    let text = String::from_utf8(first).unwrap();
    let average = |agent: &str| -> Vec<String> {
        text.lines()
            .filter(|l| l.split_whitespace().next() == Some(agent))
            .last()
            .unwrap()
            .split_whitespace()
            .map(str::to_string)
            .collect()
    };
    // Averages table: agent, avg O, avg I, avg.
    assert_eq!(average("oracle_scripted")[2], "1.000");
    assert_eq!(average("random")[2], "-");

    ok(&["report", logs_arg]);
    let report = fs::read_to_string(logs.join("report.md")).unwrap();
    assert!(report.contains("| oracle_scripted | TicTacToe |"));
    assert!(report.contains("NaturalEnd"));
}

#[test]
fn replay_writes_one_frame_per_turn() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), TWO_RANDOM);
    let logs = dir.path().join("logs");
    ok(&["run", "--config", &cfg, "--out", logs.to_str().unwrap()]);
    let file = logs.join("tic_tac_toe").join("r1__vs__r2.jsonl");
    let record: MatchRecord =
        serde_json::from_str(fs::read_to_string(&file).unwrap().lines().nth(3).unwrap()).unwrap();

    let frames = dir.path().join("frames");
    ok(&["replay", file.to_str().unwrap(), "--index", "3", "--out", frames.to_str().unwrap()]);
    let txt = walk(&frames).into_iter().filter(|p| p.extension().is_some_and(|e| e == "txt")).count();
    let svg = walk(&frames).into_iter().filter(|p| p.extension().is_some_and(|e| e == "svg")).count();
    // index.txt is the extra text file.
    assert_eq!(txt, record.turns.len() + 1);
    assert_eq!(svg, record.turns.len());
    let game = LineGame::TIC_TAC_TOE;
    let initial = game.render_state(&game.initial_state(record.config.seed), PlayerSeat::First);
    assert_eq!(fs::read_to_string(frames.join("frame_000.txt")).unwrap(), initial);

    let out_of_range = arena(&["replay", file.to_str().unwrap(), "--index", "20", "--out", frames.to_str().unwrap()]);
    assert!(!out_of_range.status.success());
}

#[test]
fn bad_inputs_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let one_agent = write_config(
        dir.path(),
        r#"
games = ["pong"]
[[agents]]
kind = "random"
"#,
    );
    assert!(!arena(&["run", "--config", &one_agent]).status.success());
    assert!(!arena(&["run", "--config", "/nonexistent/arena.toml"]).status.success());

    let odd = write_config(dir.path(), &TWO_RANDOM.replace("matches_per_pair = 20", "matches_per_pair = 3"));
    assert!(!arena(&["run", "--config", &odd]).status.success());

    let empty = dir.path().join("empty");
    fs::create_dir_all(&empty).unwrap();
    assert!(!arena(&["score", empty.to_str().unwrap()]).status.success());
    assert!(!arena(&["report", empty.to_str().unwrap()]).status.success());
}
