//! Rules engines and subproblem oracles for the eight games.

pub mod checkers;
pub mod grid;
pub mod holdem;
pub mod negotiation;
pub mod othello;
pub mod pong;
pub mod surround;

pub use checkers::Checkers;
pub use grid::LineGame;
pub use holdem::Holdem;
pub use negotiation::Negotiation;
pub use othello::Othello;
pub use pong::Pong;
pub use surround::Surround;

use crate::engine::record::PlayerSeat;

/// Rewards for a decided win/draw/lose game.
pub(crate) fn win_rewards(winner: Option<PlayerSeat>) -> [f64; 2] {
    match winner {
        Some(PlayerSeat::First) => [1.0, -1.0],
        Some(PlayerSeat::Second) => [-1.0, 1.0],
        None => [0.0, 0.0],
    }
}

/// Result of a two-player board game from seat First's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    FirstWins,
    SecondWins,
    Draw,
    Ongoing,
}

impl Outcome {
    pub fn winner(self) -> Option<PlayerSeat> {
        match self {
            Outcome::FirstWins => Some(PlayerSeat::First),
            Outcome::SecondWins => Some(PlayerSeat::Second),
            _ => None,
        }
    }
}
