use thiserror::Error;

use crate::catalog::GameId;

#[derive(Debug, Error)]
pub enum ArenaError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("game {0} is not supported by this build")]
    UnsupportedGame(GameId),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("template error: {0}")]
    Template(String),
    #[error("replay mismatch at turn {turn}: {detail}")]
    ReplayMismatch { turn: usize, detail: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Agent(#[from] crate::agents::AgentError),
}

pub type Result<T, E = ArenaError> = std::result::Result<T, E>;
