use super::{Agent, AgentError, AgentRequest};
use crate::protocol::format_reply;

/// Restates the oracle answers exactly and plays the game's fixed policy.
/// Its I score is 1.0 by construction, which makes it a fixture for the
/// scoring and protocol paths.
#[derive(Debug, Clone)]
pub struct OracleScriptedAgent {
    id: String,
}

impl OracleScriptedAgent {
    pub fn new() -> OracleScriptedAgent {
        OracleScriptedAgent::with_id("oracle_scripted")
    }

    pub fn with_id(id: impl Into<String>) -> OracleScriptedAgent {
        OracleScriptedAgent { id: id.into() }
    }
}

impl Default for OracleScriptedAgent {
    fn default() -> Self {
        OracleScriptedAgent::new()
    }
}

impl Agent for OracleScriptedAgent {
    fn id(&self) -> &str {
        &self.id
    }

    fn reply(&self, request: &AgentRequest) -> Result<String, AgentError> {
        Ok(format_reply(request.game, &request.hints.truths, &request.hints.policy_action))
    }
}
