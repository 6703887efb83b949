use serde::{Deserialize, Serialize};

use crate::catalog::GameId;
use crate::payload::SubproblemTruth;
use crate::protocol::{ParsedResponse, PromptVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlayerSeat {
    First,
    Second,
}

impl PlayerSeat {
    pub const BOTH: [PlayerSeat; 2] = [PlayerSeat::First, PlayerSeat::Second];

    pub fn other(self) -> PlayerSeat {
        match self {
            PlayerSeat::First => PlayerSeat::Second,
            PlayerSeat::Second => PlayerSeat::First,
        }
    }

    pub fn index(self) -> usize {
        match self {
            PlayerSeat::First => 0,
            PlayerSeat::Second => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvalidActionPolicy {
    /// Substitute a uniformly random legal action and flag the turn.
    #[default]
    RandomFallback,
    /// The seat that failed to produce a legal action loses the match.
    ForfeitMatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchConfig {
    pub game_id: GameId,
    pub seed: u64,
    pub max_turns: u32,
    pub prompt_variant: PromptVariant,
    pub parse_retries: u32,
    pub invalid_action_policy: InvalidActionPolicy,
    #[serde(default)]
    pub strict_parse: bool,
}

impl MatchConfig {
    pub fn new(game_id: GameId, seed: u64) -> MatchConfig {
        MatchConfig {
            game_id,
            seed,
            max_turns: game_id.default_max_turns(),
            prompt_variant: PromptVariant::CuratedCoT,
            parse_retries: 1,
            invalid_action_policy: InvalidActionPolicy::RandomFallback,
            strict_parse: false,
        }
    }

    pub fn with_policy(mut self, policy: InvalidActionPolicy) -> MatchConfig {
        self.invalid_action_policy = policy;
        self
    }

    pub fn with_variant(mut self, variant: PromptVariant) -> MatchConfig {
        self.prompt_variant = variant;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnRecord {
    pub turn_index: usize,
    pub seat: PlayerSeat,
    pub state_text: String,
    pub prompt_text: String,
    pub raw_reply: String,
    pub parsed: ParsedResponse,
    pub truths: Vec<SubproblemTruth>,
    /// `None` only on the turn where a seat forfeited.
    pub action_taken: Option<String>,
    pub action_was_fallback: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TerminationReason {
    NaturalEnd,
    TurnLimit,
    Forfeit,
    DrawRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub config: MatchConfig,
    pub agent_ids: [String; 2],
    pub turns: Vec<TurnRecord>,
    pub reward_first: f64,
    pub reward_second: f64,
    pub reward_cap: f64,
    pub termination_reason: TerminationReason,
}

impl MatchRecord {
    pub fn reward(&self, seat: PlayerSeat) -> f64 {
        match seat {
            PlayerSeat::First => self.reward_first,
            PlayerSeat::Second => self.reward_second,
        }
    }

    /// Seats occupied by `agent_id` (both when an agent plays itself).
    pub fn seats_of(&self, agent_id: &str) -> Vec<PlayerSeat> {
        PlayerSeat::BOTH.into_iter().filter(|s| self.agent_ids[s.index()] == agent_id).collect()
    }

    pub fn fallback_count(&self, seat: PlayerSeat) -> usize {
        self.turns.iter().filter(|t| t.seat == seat && t.action_was_fallback).count()
    }
}
