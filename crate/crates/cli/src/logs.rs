//! JSONL match logs: one file per (game, pair), one record per line.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use arena_core::{GameId, MatchRecord};

/// File-name-safe form of an agent id.
pub fn slug(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || "._-".contains(c) { c } else { '_' }).collect()
}

pub fn log_path(out: &Path, game: GameId, a: &str, b: &str) -> PathBuf {
    out.join(game.as_str()).join(format!("{}__vs__{}.jsonl", slug(a), slug(b)))
}

pub fn read_log(path: &Path) -> Result<Vec<MatchRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).with_context(|| format!("{}:{}", path.display(), n + 1))?;
        out.push(record);
    }
    Ok(out)
}

pub fn append(path: &Path, records: &[MatchRecord]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        writeln!(file, "{}", serde_json::to_string(r)?)?;
    }
    file.flush()?;
    Ok(())
}

/// Every `.jsonl` file under `dir`, sorted by path.
pub fn find_logs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).with_context(|| format!("reading {}", d.display()))? {
            let path = entry?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "jsonl") {
                out.push(path);
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn read_all(dir: &Path) -> Result<Vec<MatchRecord>> {
    let files = find_logs(dir)?;
    if files.is_empty() {
        bail!("no match logs under {}", dir.display());
    }
    let mut out = Vec::new();
    for f in files {
        out.extend(read_log(&f)?);
    }
    Ok(out)
}
