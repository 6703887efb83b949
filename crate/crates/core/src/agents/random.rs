use rand::seq::SliceRandom;
use rand::Rng;

use super::{Agent, AgentError, AgentRequest};
use crate::protocol::action_line;
use crate::rng::derive_rng;

/// Probability of accepting a standing offer when one exists.
const ACCEPT_PROBABILITY: f64 = 0.25;

/// Picks a legal action uniformly at random and states only that action.
#[derive(Debug, Clone)]
pub struct RandomAgent {
    id: String,
}

impl RandomAgent {
    pub fn new() -> RandomAgent {
        RandomAgent::with_id("random")
    }

    pub fn with_id(id: impl Into<String>) -> RandomAgent {
        RandomAgent { id: id.into() }
    }
}

impl Default for RandomAgent {
    fn default() -> Self {
        RandomAgent::new()
    }
}

impl Agent for RandomAgent {
    fn id(&self) -> &str {
        &self.id
    }

    fn reply(&self, request: &AgentRequest) -> Result<String, AgentError> {
        let mut rng = derive_rng(request.seed, &[]);
        let choice = match &request.accept_action {
            Some(accept) => {
                let others: Vec<&String> = request.legal_actions.iter().filter(|a| *a != accept).collect();
                if others.is_empty() || rng.gen_bool(ACCEPT_PROBABILITY) {
                    accept.clone()
                } else {
                    (*others.choose(&mut rng).expect("non-empty")).clone()
                }
            }
            None => request
                .legal_actions
                .choose(&mut rng)
                .cloned()
                .ok_or_else(|| AgentError::Config("no legal actions offered".into()))?,
        };
        Ok(action_line(request.game, &choice))
    }
}
