//! `arena`: run tournaments, score their logs, render replays.

mod config;
mod logs;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use arena_core::{run_match, schedule, Agent, MatchConfig, MatchRecord, PromptVariant, Scoreboard};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "arena", version, about = "Two-player game arena for decision-making agents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Play every pairing on every configured game and log the matches.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Log directory; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// curated-cot, generic-cot or action-only.
        #[arg(long)]
        variant: Option<PromptVariant>,
        /// Matches played at once.
        #[arg(long)]
        parallel: Option<usize>,
        /// Accept only the exact answer formats the prompts declare.
        #[arg(long)]
        strict_parse: bool,
    },
    /// Compute O and I per agent and game from a log directory.
    Score {
        logs: PathBuf,
        /// Where to write scores.csv and scores.txt; defaults to the log directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one frame per turn of a logged match.
    Replay {
        log: PathBuf,
        /// Zero-based line of the match in the log file.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Markdown summary of a log directory.
    Report {
        logs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run { config, out, seed, variant, parallel, strict_parse } => {
            let mut cfg = RunConfig::load(&config)?;
            if let Some(out) = out {
                cfg.out = out;
            }
            if let Some(seed) = seed {
                cfg.base_seed = seed;
            }
            if let Some(variant) = variant {
                cfg.prompt_variant = variant;
            }
            if parallel.is_some() {
                cfg.parallel = parallel;
            }
            cfg.strict_parse |= strict_parse;
            cfg.validate()?;
            let played = run(&cfg)?;
            eprintln!("{played} new matches; logs in {}", cfg.out.display());
        }
        Command::Score { logs, out } => {
            let board = Scoreboard::from_records(&logs::read_all(&logs)?);
            let out = out.unwrap_or(logs);
            fs::create_dir_all(&out)?;
            fs::write(out.join("scores.csv"), board.to_csv())?;
            fs::write(out.join("scores.txt"), board.to_text())?;
            print!("{}", board.to_text());
        }
        Command::Replay { log, index, out } => {
            let records = logs::read_log(&log)?;
            let record = records
                .get(index)
                .ok_or_else(|| anyhow!("match {index} out of range: {} holds {} matches", log.display(), records.len()))?;
            let frames = write_replay(record, &out)?;
            eprintln!("{frames} frames in {}", out.display());
        }
        Command::Report { logs, out } => {
            let records = logs::read_all(&logs)?;
            let out = out.unwrap_or(logs);
            fs::create_dir_all(&out)?;
            fs::write(out.join("report.md"), report(&records))?;
        }
    }
    Ok(())
}

/// Plays every scheduled match that is not already logged. Returns the
/// number of matches played.
fn run(cfg: &RunConfig) -> Result<usize> {
    let agents: Vec<Box<dyn Agent>> =
        cfg.agents.iter().map(|spec| spec.build().map_err(|e| anyhow!("agent {}: {e}", spec.id()))).collect::<Result<_>>()?;
    let ids: Vec<String> = agents.iter().map(|a| a.id().to_string()).collect();
    let plan = schedule(agents.len(), cfg.matches_per_pair, cfg.base_seed)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.parallel.unwrap_or(0)).build()?;
    fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;

    let mut played = 0;
    let mut files = Vec::new();
    for &game in &cfg.games {
        for i in 0..agents.len() {
            for j in i + 1..agents.len() {
                let path = logs::log_path(&cfg.out, game, &ids[i], &ids[j]);
                let done: BTreeSet<u64> = if path.exists() {
                    logs::read_log(&path)?.iter().map(|r| r.config.seed).collect()
                } else {
                    BTreeSet::new()
                };
                let todo: Vec<_> = plan
                    .iter()
                    .filter(|m| (m.first, m.second) == (i, j) || (m.first, m.second) == (j, i))
                    .filter(|m| !done.contains(&m.seed))
                    .collect();
                let results: Vec<Result<MatchRecord>> = pool.install(|| {
                    todo.par_iter()
                        .map(|m| {
                            let mut config = MatchConfig::new(game, m.seed).with_variant(cfg.prompt_variant);
                            config.strict_parse = cfg.strict_parse;
                            config.invalid_action_policy = cfg.invalid_action_policy;
                            run_match(&config, agents[m.first].as_ref(), agents[m.second].as_ref()).map_err(Into::into)
                        })
                        .collect()
                });
                let records: Vec<MatchRecord> = results.into_iter().collect::<Result<_>>()?;
                logs::append(&path, &records)?;
                eprintln!("{game} {} vs {}: {} played, {} already logged", ids[i], ids[j], records.len(), done.len());
                played += records.len();
                let seeds: Vec<u64> = plan
                    .iter()
                    .filter(|m| (m.first, m.second) == (i, j) || (m.first, m.second) == (j, i))
                    .map(|m| m.seed)
                    .collect();
                files.push(json!({
                    "game": game,
                    "agents": [ids[i], ids[j]],
                    "path": path.strip_prefix(&cfg.out).unwrap_or(&path),
                    "seeds": seeds,
                }));
            }
        }
    }
    let manifest = json!({
        "arena_version": env!("CARGO_PKG_VERSION"),
        "base_seed": cfg.base_seed,
        "matches_per_pair": cfg.matches_per_pair,
        "prompt_variant": cfg.prompt_variant,
        "strict_parse": cfg.strict_parse,
        "invalid_action_policy": cfg.invalid_action_policy,
        "agents": cfg.agents,
        "games": cfg.games,
        "files": files,
    });
    fs::write(cfg.out.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(played)
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn svg_frame(title: &str, text: &str) -> String {
    let lines: Vec<&str> = text.lines().collect();
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0).max(title.len()) * 8 + 20;
    let height = (lines.len() + 2) * 16 + 10;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" font-family=\"monospace\" font-size=\"13\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"10\" y=\"20\" font-weight=\"bold\">{}</text>\n",
        escape_xml(title)
    );
    for (n, line) in lines.iter().enumerate() {
        let _ = writeln!(svg, "<text x=\"10\" y=\"{}\" xml:space=\"preserve\">{}</text>", 20 + 16 * (n + 2), escape_xml(line));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes `frame_NNN.txt` (the exact state text) and `frame_NNN.svg` per
/// turn, plus `index.txt` listing seat and action.
fn write_replay(record: &MatchRecord, out: &Path) -> Result<usize> {
    fs::create_dir_all(out)?;
    let mut index = format!(
        "game {} seed {} first {} second {}\n",
        record.config.game_id, record.config.seed, record.agent_ids[0], record.agent_ids[1]
    );
    for (n, turn) in record.turns.iter().enumerate() {
        let action = turn.action_taken.as_deref().unwrap_or("(forfeit)");
        let fallback = if turn.action_was_fallback { " [fallback]" } else { "" };
        fs::write(out.join(format!("frame_{n:03}.txt")), &turn.state_text)?;
        let title = format!("turn {n} {:?}: {action}{fallback}", turn.seat);
        fs::write(out.join(format!("frame_{n:03}.svg")), svg_frame(&title, &turn.state_text))?;
        let _ = writeln!(index, "{n:03} {:?} {action}{fallback}", turn.seat);
    }
    let _ = writeln!(
        index,
        "result {:?}: first {} second {}",
        record.termination_reason, record.reward_first, record.reward_second
    );
    fs::write(out.join("index.txt"), index)?;
    Ok(record.turns.len())
}

fn report(records: &[MatchRecord]) -> String {
    let board = Scoreboard::from_records(records);
    let num = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.3}"));
    let mut out = String::from("# Arena report\n\n");
    let _ = writeln!(out, "{} matches over {} games.\n", records.len(), board.games().len());
    out.push_str("## Per game\n\n| agent | game | matches | W/D/L | O | I | subproblems | fallback rate |\n|---|---|---|---|---|---|---|---|\n");
    for r in &board.rows {
        let subs: Vec<String> = r.subproblems.iter().map(|s| format!("P{} {}", s.index, num(s.score))).collect();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {}/{}/{} | {} | {} | {} | {:.3} |",
            r.agent,
            r.game.display_name(),
            r.matches,
            r.wins,
            r.draws,
            r.losses,
            num(r.outcome),
            num(r.intermediate),
            subs.join(", "),
            r.fallback_rate
        );
    }
    out.push_str("\n## Averages\n\n| agent | avg O | avg I | avg |\n|---|---|---|---|\n");
    for agent in board.agents() {
        let a = board.averages(&agent);
        let _ = writeln!(out, "| {agent} | {} | {} | {} |", num(a.outcome), num(a.intermediate), num(a.overall));
    }
    let mut endings: BTreeMap<(String, String), usize> = BTreeMap::new();
    for r in records {
        *endings.entry((r.config.game_id.to_string(), format!("{:?}", r.termination_reason))).or_default() += 1;
    }
    out.push_str("\n## How matches ended\n\n| game | reason | matches |\n|---|---|---|\n");
    for ((game, reason), n) in endings {
        let _ = writeln!(out, "| {game} | {reason} | {n} |");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_escapes_markup() {
        let svg = svg_frame("t", "a<b & c>d");
        assert!(svg.contains("a&lt;b &amp; c&gt;d"));
    }

    #[test]
    fn zero_parallelism_is_rejected_before_running() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"games":["pong"],"parallel":0,"agents":[{"kind":"random"},{"kind":"oracle_scripted"}]}"#,
        )
        .unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn empty_log_directory_is_an_error() {
        let dir = std::env::temp_dir().join(format!("arena-empty-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        assert!(logs::read_all(&dir).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
