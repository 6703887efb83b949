//! Round-robin scheduling with seat alternation.

use rayon::prelude::*;

use super::record::{MatchConfig, MatchRecord};
use super::run_match;
use crate::agents::Agent;
use crate::catalog::GameId;
use crate::error::{ArenaError, Result};
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduledMatch {
    pub pair_index: usize,
    pub match_index: usize,
    /// Agent indices for seats First and Second.
    pub first: usize,
    pub second: usize,
    pub seed: u64,
}

/// Every unordered pair `i < j` plays `matches_per_pair` matches; agent `i`
/// takes seat First on even match indices and agent `j` on odd ones.
pub fn schedule(n_agents: usize, matches_per_pair: usize, base_seed: u64) -> Result<Vec<ScheduledMatch>> {
    if matches_per_pair % 2 != 0 {
        return Err(ArenaError::Config(format!("matches_per_pair must be even, got {matches_per_pair}")));
    }
    let mut out = Vec::new();
    let mut pair_index = 0;
    for i in 0..n_agents {
        for j in i + 1..n_agents {
            for match_index in 0..matches_per_pair {
                let (first, second) = if match_index % 2 == 0 { (i, j) } else { (j, i) };
                out.push(ScheduledMatch {
                    pair_index,
                    match_index,
                    first,
                    second,
                    seed: derive_seed(base_seed, &[pair_index as u64, match_index as u64]),
                });
            }
            pair_index += 1;
        }
    }
    Ok(out)
}

/// Runs a full round robin for one game with default match settings.
pub fn run_tournament(
    agents: &[&dyn Agent],
    game_id: GameId,
    matches_per_pair: usize,
    base_seed: u64,
) -> Result<Vec<MatchRecord>> {
    run_tournament_with(agents, &MatchConfig::new(game_id, base_seed), matches_per_pair, base_seed)
}

/// Like [`run_tournament`], taking every setting but the seed from
/// `base`. Matches run in parallel; results come back in schedule order.
pub fn run_tournament_with(
    agents: &[&dyn Agent],
    base: &MatchConfig,
    matches_per_pair: usize,
    base_seed: u64,
) -> Result<Vec<MatchRecord>> {
    let plan = schedule(agents.len(), matches_per_pair, base_seed)?;
    plan.par_iter()
        .map(|m| {
            let config = MatchConfig { seed: m.seed, ..base.clone() };
            run_match(&config, agents[m.first], agents[m.second])
        })
        .collect()
}
