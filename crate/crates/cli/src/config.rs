use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use arena_core::{AgentSpec, GameId, InvalidActionPolicy, PromptVariant};
use serde::{Deserialize, Serialize};

fn default_matches() -> usize {
    20
}

fn default_out() -> PathBuf {
    PathBuf::from("arena-logs")
}

/// Everything a tournament run needs. Loaded from TOML or JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub agents: Vec<AgentSpec>,
    pub games: Vec<GameId>,
    #[serde(default = "default_matches")]
    pub matches_per_pair: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub prompt_variant: PromptVariant,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    /// Matches run at once; all cores when absent.
    #[serde(default)]
    pub parallel: Option<usize>,
    #[serde(default)]
    pub strict_parse: bool,
    #[serde(default)]
    pub invalid_action_policy: InvalidActionPolicy,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let config: RunConfig = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
            _ => toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.agents.len() < 2 {
            bail!("at least two agents are needed, got {}", self.agents.len());
        }
        if self.games.is_empty() {
            bail!("no games listed");
        }
        if self.matches_per_pair == 0 || self.matches_per_pair % 2 != 0 {
            bail!("matches_per_pair must be a positive even number, got {}", self.matches_per_pair);
        }
        let ids: BTreeSet<String> = self.agents.iter().map(AgentSpec::id).collect();
        if ids.len() != self.agents.len() {
            bail!("agent ids must be unique; give duplicates an explicit id");
        }
        if self.parallel == Some(0) {
            bail!("parallel must be at least 1");
        }
        Ok(())
    }
}
