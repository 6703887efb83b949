//! Agents: uniform random play, an oracle-backed scripted player and a
//! remote chat-completion client.

mod random;
mod remote;
mod scripted;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::GameId;
use crate::engine::record::PlayerSeat;
use crate::payload::SubproblemTruth;

pub use random::RandomAgent;
pub use remote::{Provider, RemoteLlmAgent, RemoteSpec};
pub use scripted::OracleScriptedAgent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AgentError {
    #[error("agent configuration: {0}")]
    Config(String),
    #[error("transport failure: {0}")]
    Transport(String),
    #[error("HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("unexpected response shape: {0}")]
    Response(String),
}

/// Answers the engine knows for this turn. Only the scripted agent reads
/// them; remote agents never forward them.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleHints {
    pub truths: Vec<SubproblemTruth>,
    /// Canonical text of the fixed policy's action.
    pub policy_action: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentRequest {
    pub game: GameId,
    pub seat: PlayerSeat,
    pub prompt: String,
    pub state_text: String,
    /// Canonical text of every legal action.
    pub legal_actions: Vec<String>,
    /// The legal action that accepts a standing offer, if any.
    pub accept_action: Option<String>,
    pub hints: OracleHints,
    /// Per-request seed for agents that randomize.
    pub seed: u64,
    pub attempt: u32,
}

pub trait Agent: Send + Sync {
    fn id(&self) -> &str;
    fn reply(&self, request: &AgentRequest) -> Result<String, AgentError>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AgentSpec {
    Random {
        #[serde(default)]
        id: Option<String>,
    },
    OracleScripted {
        #[serde(default)]
        id: Option<String>,
    },
    RemoteLlm(RemoteSpec),
}

impl AgentSpec {
    pub fn id(&self) -> String {
        match self {
            AgentSpec::Random { id } => id.clone().unwrap_or_else(|| "random".into()),
            AgentSpec::OracleScripted { id } => id.clone().unwrap_or_else(|| "oracle_scripted".into()),
            AgentSpec::RemoteLlm(spec) => spec.agent_id(),
        }
    }

    /// Builds the agent. Remote agents check their credential here, before
    /// any request is made.
    pub fn build(&self) -> Result<Box<dyn Agent>, AgentError> {
        Ok(match self {
            AgentSpec::Random { .. } => Box::new(RandomAgent::with_id(self.id())),
            AgentSpec::OracleScripted { .. } => Box::new(OracleScriptedAgent::with_id(self.id())),
            AgentSpec::RemoteLlm(spec) => Box::new(RemoteLlmAgent::new(spec.clone())?),
        })
    }
}
