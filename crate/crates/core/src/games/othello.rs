//! Othello on an 8x8 board. Squares are `(row, col)` zero-based
//! internally and print as `(C,5)`: column letter, then row number.

use std::collections::BTreeSet;

use super::{win_rewards, Outcome};
use crate::catalog::GameId;
use crate::engine::record::{PlayerSeat, TerminationReason};
use crate::engine::{Game, GameStatus};
use crate::error::{ArenaError, Result};
use crate::payload::Payload;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Disc {
    Empty,
    Black,
    White,
}

impl Disc {
    pub fn opponent(self) -> Disc {
        match self {
            Disc::Black => Disc::White,
            Disc::White => Disc::Black,
            Disc::Empty => Disc::Empty,
        }
    }

    fn symbol(self) -> char {
        match self {
            Disc::Empty => 'O',
            Disc::Black => 'B',
            Disc::White => 'W',
        }
    }

    fn seat(self) -> PlayerSeat {
        if self == Disc::Black {
            PlayerSeat::First
        } else {
            PlayerSeat::Second
        }
    }
}

pub type Square = (usize, usize);

const DIRECTIONS: [(i32, i32); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];
pub const CORNERS: [Square; 4] = [(0, 0), (0, 7), (7, 0), (7, 7)];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OthelloState {
    /// `board[row][col]`; row 0 prints as 1, col 0 as A.
    pub board: [[Disc; 8]; 8],
    pub to_move: Disc,
    /// Passes in a row leading to this state: 1 after a forced pass, 2
    /// once neither side can move.
    pub consecutive_passes: u8,
}

impl OthelloState {
    pub fn initial() -> OthelloState {
        let mut board = [[Disc::Empty; 8]; 8];
        let at = |s: &str| parse_square(s).expect("valid square");
        for (sq, disc) in [("(D,4)", Disc::Black), ("(E,5)", Disc::Black), ("(D,5)", Disc::White), ("(E,4)", Disc::White)] {
            let (r, c) = at(sq);
            board[r][c] = disc;
        }
        OthelloState { board, to_move: Disc::Black, consecutive_passes: 0 }
    }

    pub fn count(&self, disc: Disc) -> usize {
        self.board.iter().flatten().filter(|&&d| d == disc).count()
    }
}

pub fn square_name((row, col): Square) -> String {
    format!("({},{})", (b'A' + col as u8) as char, row + 1)
}

pub fn parse_square(text: &str) -> Option<Square> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (c, r) = inner.split_once(',')?;
    let c = c.trim().chars().next()?.to_ascii_uppercase();
    let r: usize = r.trim().parse().ok()?;
    ((1..=8).contains(&r) && ('A'..='H').contains(&c)).then(|| (r - 1, (c as u8 - b'A') as usize))
}

/// Discs flipped by `color` playing at `sq`; empty when the move is illegal.
pub fn flips(board: &[[Disc; 8]; 8], color: Disc, (row, col): Square) -> Vec<Square> {
    let mut out = Vec::new();
    if board[row][col] != Disc::Empty {
        return out;
    }
    let opp = color.opponent();
    for (dr, dc) in DIRECTIONS {
        let mut run = Vec::new();
        let (mut r, mut c) = (row as i32 + dr, col as i32 + dc);
        while (0..8).contains(&r) && (0..8).contains(&c) && board[r as usize][c as usize] == opp {
            run.push((r as usize, c as usize));
            r += dr;
            c += dc;
        }
        if !run.is_empty() && (0..8).contains(&r) && (0..8).contains(&c) && board[r as usize][c as usize] == color {
            out.extend(run);
        }
    }
    out
}

pub fn legal_moves_for(board: &[[Disc; 8]; 8], color: Disc) -> Vec<Square> {
    let mut out = Vec::new();
    for r in 0..8 {
        for c in 0..8 {
            if !flips(board, color, (r, c)).is_empty() {
                out.push((r, c));
            }
        }
    }
    out
}

/// Legal moves for the side to move, row-major; empty means pass.
pub fn legal_moves(state: &OthelloState) -> Vec<Square> {
    legal_moves_for(&state.board, state.to_move)
}

/// Places a disc, flips every outflanked line, and hands the turn to the
/// opponent unless the opponent has no move.
pub fn apply_move(state: &OthelloState, sq: Square) -> Result<OthelloState> {
    let flipped = flips(&state.board, state.to_move, sq);
    if flipped.is_empty() {
        return Err(ArenaError::IllegalMove(format!("{} is not legal for {:?}", square_name(sq), state.to_move)));
    }
    let mut next = state.clone();
    next.board[sq.0][sq.1] = state.to_move;
    for (r, c) in flipped {
        next.board[r][c] = state.to_move;
    }
    let opp = state.to_move.opponent();
    if !legal_moves_for(&next.board, opp).is_empty() {
        next.to_move = opp;
        next.consecutive_passes = 0;
    } else if !legal_moves_for(&next.board, state.to_move).is_empty() {
        next.consecutive_passes = 1;
    } else {
        next.to_move = opp;
        next.consecutive_passes = 2;
    }
    Ok(next)
}

pub fn outcome(state: &OthelloState) -> Outcome {
    if !legal_moves_for(&state.board, Disc::Black).is_empty() || !legal_moves_for(&state.board, Disc::White).is_empty() {
        return Outcome::Ongoing;
    }
    let (b, w) = (state.count(Disc::Black), state.count(Disc::White));
    match b.cmp(&w) {
        std::cmp::Ordering::Greater => Outcome::FirstWins,
        std::cmp::Ordering::Less => Outcome::SecondWins,
        std::cmp::Ordering::Equal => Outcome::Draw,
    }
}

/// Whether the side to move can take a corner right now.
pub fn oracle_corner(state: &OthelloState) -> bool {
    let legal = legal_moves(state);
    CORNERS.iter().any(|c| legal.contains(c))
}

fn edges() -> [[Square; 8]; 4] {
    let mut e = [[(0, 0); 8]; 4];
    for i in 0..8 {
        e[0][i] = (0, i);
        e[1][i] = (7, i);
        e[2][i] = (i, 0);
        e[3][i] = (i, 7);
    }
    e
}

/// Legal edge squares inside a run of 1, 3 or 5 empty edge squares
/// whose two neighbours along the edge are opponent discs.
pub fn oracle_wedges(state: &OthelloState) -> BTreeSet<Square> {
    let legal = legal_moves(state);
    let opp = state.to_move.opponent();
    let mut out = BTreeSet::new();
    for edge in edges() {
        let cell = |i: usize| state.board[edge[i].0][edge[i].1];
        let mut i = 0;
        while i < 8 {
            if cell(i) != Disc::Empty {
                i += 1;
                continue;
            }
            let start = i;
            while i < 8 && cell(i) == Disc::Empty {
                i += 1;
            }
            let len = i - start;
            let bounded = start > 0 && i < 8 && cell(start - 1) == opp && cell(i) == opp;
            if bounded && len % 2 == 1 && len <= 5 {
                out.extend(edge[start..i].iter().filter(|sq| legal.contains(sq)));
            }
        }
    }
    out
}

const WEIGHTS: [[i32; 8]; 8] = [
    [100, -20, 10, 5, 5, 10, -20, 100],
    [-20, -50, -2, -2, -2, -2, -50, -20],
    [10, -2, -1, -1, -1, -1, -2, 10],
    [5, -2, -1, -1, -1, -1, -2, 5],
    [5, -2, -1, -1, -1, -1, -2, 5],
    [10, -2, -1, -1, -1, -1, -2, 10],
    [-20, -50, -2, -2, -2, -2, -50, -20],
    [100, -20, 10, 5, 5, 10, -20, 100],
];

pub fn render(state: &OthelloState) -> String {
    let mut out = String::new();
    let (name, sym) = if state.to_move == Disc::Black { ("Black", 'B') } else { ("White", 'W') };
    out.push_str(&format!("You are playing {name} ({sym}).\nCurrent Game Board:\n"));
    for r in 0..8 {
        let row: Vec<String> = (0..8).map(|c| format!("{}:{}", square_name((r, c)), state.board[r][c].symbol())).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let legal: Vec<String> = legal_moves(state).into_iter().map(|m| format!("'{}'", square_name(m))).collect();
    out.push_str(&format!("All legal moves: [{}]\n", legal.join(", ")));
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Othello;

impl Game for Othello {
    type State = OthelloState;
    type Action = Square;

    fn id(&self) -> GameId {
        GameId::Othello
    }

    fn initial_state(&self, _seed: u64) -> OthelloState {
        OthelloState::initial()
    }

    fn acting_seats(&self, state: &OthelloState) -> Vec<PlayerSeat> {
        if outcome(state) == Outcome::Ongoing {
            vec![state.to_move.seat()]
        } else {
            vec![]
        }
    }

    fn legal_actions(&self, state: &OthelloState, _seat: PlayerSeat) -> Vec<Square> {
        legal_moves(state)
    }

    fn render_state(&self, state: &OthelloState, _seat: PlayerSeat) -> String {
        render(state)
    }

    fn truths(&self, state: &OthelloState, _seat: PlayerSeat) -> Vec<Option<Payload>> {
        vec![
            Some(Payload::Bool(oracle_corner(state))),
            Some(Payload::set(oracle_wedges(state).into_iter().map(square_name))),
        ]
    }

    fn format_action(&self, action: &Square) -> String {
        square_name(*action)
    }

    fn apply(&self, state: &OthelloState, actions: &[(PlayerSeat, Square)]) -> Result<OthelloState> {
        match actions {
            [(_, sq)] => apply_move(state, *sq),
            _ => Err(ArenaError::IllegalMove("Othello takes one action per turn".into())),
        }
    }

    fn status(&self, state: &OthelloState) -> GameStatus {
        match outcome(state) {
            Outcome::Ongoing => GameStatus::Ongoing,
            o => GameStatus::Finished { rewards: win_rewards(o.winner()), reason: TerminationReason::NaturalEnd },
        }
    }

    /// Corner, then wedge, then the best square by a static weight table.
    fn scripted_action(&self, state: &OthelloState, _seat: PlayerSeat, _truths: &[Option<Payload>]) -> Square {
        let legal = legal_moves(state);
        if let Some(c) = legal.iter().find(|m| CORNERS.contains(m)) {
            return *c;
        }
        if let Some(w) = oracle_wedges(state).into_iter().next() {
            return w;
        }
        *legal.iter().max_by_key(|&&(r, c)| (WEIGHTS[r][c], std::cmp::Reverse((r, c)))).expect("a legal move exists")
    }
}
