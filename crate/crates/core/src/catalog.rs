//! Static description of the eight games and their scored subproblems.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameId {
    Othello,
    Pong,
    Surround,
    Checkers,
    TicTacToe,
    Connect4,
    TexasHoldem,
    Negotiation,
}

impl GameId {
    pub const ALL: [GameId; 8] = [
        GameId::Othello,
        GameId::Pong,
        GameId::Surround,
        GameId::Checkers,
        GameId::TicTacToe,
        GameId::Connect4,
        GameId::TexasHoldem,
        GameId::Negotiation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GameId::Othello => "othello",
            GameId::Pong => "pong",
            GameId::Surround => "surround",
            GameId::Checkers => "checkers",
            GameId::TicTacToe => "tic_tac_toe",
            GameId::Connect4 => "connect4",
            GameId::TexasHoldem => "texas_holdem",
            GameId::Negotiation => "negotiation",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            GameId::Othello => "Othello",
            GameId::Pong => "Pong",
            GameId::Surround => "Surround",
            GameId::Checkers => "Checkers",
            GameId::TicTacToe => "TicTacToe",
            GameId::Connect4 => "Connect4",
            GameId::TexasHoldem => "Texas hold'em",
            GameId::Negotiation => "Negotiation v2",
        }
    }

    /// Average decision turns per match as observed for the reference runs.
    pub fn average_turns(self) -> u32 {
        match self {
            GameId::Othello => 63,
            GameId::Pong => 144,
            GameId::Surround => 84,
            GameId::Checkers => 76,
            GameId::TicTacToe => 7,
            GameId::Connect4 => 19,
            GameId::TexasHoldem => 9,
            GameId::Negotiation => 8,
        }
    }

    /// Safety cap on decision steps; hitting it ends the match as a draw.
    pub fn default_max_turns(self) -> u32 {
        match self {
            // One cap of 4 x 9 per hand; a match is several hands.
            GameId::TexasHoldem => 4 * self.average_turns() * crate::games::holdem::DEFAULT_HANDS_PER_MATCH,
            _ => 4 * self.average_turns(),
        }
    }

    pub fn is_zero_sum(self) -> bool {
        !matches!(self, GameId::Negotiation)
    }

    /// Win/draw/lose games score R in {-1, 0, 1} with T = 1.
    pub fn is_win_lose(self) -> bool {
        !matches!(self, GameId::TexasHoldem | GameId::Negotiation)
    }

    /// Both seats act at every decision step.
    pub fn is_simultaneous(self) -> bool {
        matches!(self, GameId::Pong | GameId::Surround)
    }

    pub fn subproblems(self) -> &'static [SubproblemSpec] {
        use MetricKind::*;
        use PayloadKind::*;
        const fn sp(index: usize, kind: PayloadKind, metric: MetricKind, scored: bool) -> SubproblemSpec {
            SubproblemSpec { index, kind, metric, scored }
        }
        match self {
            GameId::Othello => const { &[sp(1, Bool, F1, true), sp(2, CoordSet(CoordStyle::LetterNumber), F1, true)] },
            GameId::Pong => const { &[sp(1, Direction, Accuracy, true), sp(2, Integer, Accuracy, true)] },
            GameId::Surround => const { &[
                sp(1, AdjacentValues, Accuracy, true),
                sp(2, ActionSet, Accuracy, true),
                sp(3, SafetyMap, F1, true),
            ] },
            GameId::Checkers => const { &[sp(1, MoveSet, F1, true), sp(2, MoveSet, F1, true), sp(3, MoveSet, F1, false)] },
            GameId::TicTacToe | GameId::Connect4 => {
                const { &[sp(1, CoordSet(CoordStyle::RowCol), F1, true), sp(2, CoordSet(CoordStyle::RowCol), F1, true)] }
            }
            GameId::TexasHoldem => const { &[sp(1, Percent, Accuracy, true), sp(2, Integer, Accuracy, true)] },
            GameId::Negotiation => const { &[sp(1, Integer, Accuracy, true), sp(2, Integer, Accuracy, true)] },
        }
    }

    pub fn index(self) -> usize {
        GameId::ALL.iter().position(|&g| g == self).expect("listed")
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GameId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        let id = match key.as_str() {
            "othello" | "reversi" => GameId::Othello,
            "pong" => GameId::Pong,
            "surround" | "snake" => GameId::Surround,
            "checkers" | "draughts" => GameId::Checkers,
            "tictactoe" => GameId::TicTacToe,
            "connect4" | "connectfour" => GameId::Connect4,
            "texasholdem" | "holdem" => GameId::TexasHoldem,
            "negotiation" | "negotiationv2" => GameId::Negotiation,
            _ => return Err(format!("unknown game '{s}'")),
        };
        Ok(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoordStyle {
    /// `(row,col)` with zero-based integers.
    RowCol,
    /// `(D,4)`: column letter A-H, row number 1-8.
    LetterNumber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PayloadKind {
    Bool,
    Integer,
    /// Percentage with one decimal place.
    Percent,
    /// Ball direction label such as `Right Up`.
    Direction,
    CoordSet(CoordStyle),
    /// Checkers move paths `(a,b)->(c,d)[->...]`.
    MoveSet,
    /// Surround actions `Move Up`, ...
    ActionSet,
    /// Surround neighbour values `Up 1, Down 0, Left 0, Right 2`.
    AdjacentValues,
    /// Surround `Move Right Unsafe, Move Left Safe`.
    SafetyMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricKind {
    Accuracy,
    F1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubproblemSpec {
    /// One-based, as in the `[Intermediate Thinking Results N: ...]` marker.
    pub index: usize,
    pub kind: PayloadKind,
    pub metric: MetricKind,
    /// Counted in the I metric.
    pub scored: bool,
}
