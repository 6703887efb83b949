//! Game arena for evaluating decision-making agents.
//!
//! Eight games run under a common engine. At every decision the engine
//! computes oracle answers for each game's subproblems, prompts the
//! agent, extracts its intermediate answers and final action, and keeps a
//! full audit record. Scoring turns those records into the outcome metric
//! O and the intermediate-step metric I.

pub mod agents;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod games;
pub mod payload;
pub mod protocol;
pub mod rng;
pub mod scoring;

pub use agents::{Agent, AgentError, AgentRequest, AgentSpec, OracleHints, OracleScriptedAgent, RandomAgent, RemoteLlmAgent};
pub use catalog::{GameId, MetricKind, PayloadKind, SubproblemSpec};
pub use engine::record::{InvalidActionPolicy, MatchConfig, MatchRecord, PlayerSeat, TerminationReason, TurnRecord};
pub use engine::tournament::{run_tournament, schedule, ScheduledMatch};
pub use engine::{replay_match, run_match};
pub use error::{ArenaError, Result};
pub use payload::{Payload, SubproblemTruth};
pub use protocol::{ParseMode, ParsedResponse, PromptVariant};
pub use rng::{derive_rng, derive_seed, ArenaRng};
pub use scoring::{Scoreboard, ScoreRow};
