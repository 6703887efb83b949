//! TicTacToe and Connect4: n-in-a-row on a rectangular grid, with gravity
//! for Connect4. Coordinates are zero-based `(row, col)`; Connect4 row 0
//! is the bottom row.

use std::collections::BTreeSet;

use super::{win_rewards, Outcome};
use crate::catalog::GameId;
use crate::engine::record::{PlayerSeat, TerminationReason};
use crate::engine::{Game, GameStatus};
use crate::error::{ArenaError, Result};
use crate::payload::Payload;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    Empty,
    X,
    O,
}

impl Mark {
    pub fn opponent(self) -> Mark {
        match self {
            Mark::X => Mark::O,
            Mark::O => Mark::X,
            Mark::Empty => Mark::Empty,
        }
    }

    fn symbol(self) -> char {
        match self {
            Mark::Empty => '_',
            Mark::X => 'X',
            Mark::O => 'O',
        }
    }
}

pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Whom {
    Mover,
    Opponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridState {
    pub rows: usize,
    pub cols: usize,
    /// Row-major, row 0 first.
    pub cells: Vec<Mark>,
    pub to_move: Mark,
    pub gravity: bool,
    pub win_length: usize,
}

impl GridState {
    pub fn get(&self, (r, c): Cell) -> Mark {
        self.cells[r * self.cols + c]
    }

    pub fn set(&mut self, (r, c): Cell, mark: Mark) {
        self.cells[r * self.cols + c] = mark;
    }

    pub fn count(&self, mark: Mark) -> usize {
        self.cells.iter().filter(|&&m| m == mark).count()
    }
}

const AXES: [(i32, i32); 4] = [(0, 1), (1, 0), (1, 1), (1, -1)];

/// Length of the run of `mark` through `cell` along each axis, counting
/// `cell` itself as `mark`.
fn longest_through(state: &GridState, cell: Cell, mark: Mark) -> usize {
    let in_bounds = |r: i32, c: i32| r >= 0 && c >= 0 && (r as usize) < state.rows && (c as usize) < state.cols;
    AXES.iter()
        .map(|&(dr, dc)| {
            let mut n = 1;
            for sign in [1, -1] {
                let (mut r, mut c) = (cell.0 as i32 + sign * dr, cell.1 as i32 + sign * dc);
                while in_bounds(r, c) && state.get((r as usize, c as usize)) == mark {
                    n += 1;
                    r += sign * dr;
                    c += sign * dc;
                }
            }
            n
        })
        .max()
        .unwrap_or(1)
}

pub fn legal_moves(state: &GridState) -> Vec<Cell> {
    if line_winner(state).is_some() {
        return vec![];
    }
    let mut out = Vec::new();
    if state.gravity {
        for c in 0..state.cols {
            if let Some(r) = (0..state.rows).find(|&r| state.get((r, c)) == Mark::Empty) {
                out.push((r, c));
            }
        }
    } else {
        for r in 0..state.rows {
            for c in 0..state.cols {
                if state.get((r, c)) == Mark::Empty {
                    out.push((r, c));
                }
            }
        }
    }
    out
}

/// The mark owning a completed line, if any.
pub fn line_winner(state: &GridState) -> Option<Mark> {
    for r in 0..state.rows {
        for c in 0..state.cols {
            let m = state.get((r, c));
            if m != Mark::Empty && longest_through(state, (r, c), m) >= state.win_length {
                return Some(m);
            }
        }
    }
    None
}

pub fn apply_move(state: &GridState, cell: Cell) -> Result<GridState> {
    if !legal_moves(state).contains(&cell) {
        return Err(ArenaError::IllegalMove(format!("({},{}) is not a legal move", cell.0, cell.1)));
    }
    let mut next = state.clone();
    next.set(cell, state.to_move);
    next.to_move = state.to_move.opponent();
    Ok(next)
}

pub fn outcome(state: &GridState) -> Outcome {
    match line_winner(state) {
        Some(Mark::X) => Outcome::FirstWins,
        Some(_) => Outcome::SecondWins,
        None if state.cells.iter().all(|&m| m != Mark::Empty) => Outcome::Draw,
        None => Outcome::Ongoing,
    }
}

/// Legal cells where `whom`'s mark would complete a line.
pub fn oracle_winning_moves(state: &GridState, whom: Whom) -> BTreeSet<Cell> {
    let mark = match whom {
        Whom::Mover => state.to_move,
        Whom::Opponent => state.to_move.opponent(),
    };
    legal_moves(state).into_iter().filter(|&cell| longest_through(state, cell, mark) >= state.win_length).collect()
}

pub fn cell_name((r, c): Cell) -> String {
    format!("({r},{c})")
}

pub fn render(state: &GridState) -> String {
    let mut out = format!("You are player {}.\nCurrent Game Board:\n", state.to_move.symbol());
    let rows: Vec<usize> = if state.gravity { (0..state.rows).rev().collect() } else { (0..state.rows).collect() };
    for r in rows {
        let line: Vec<String> = (0..state.cols).map(|c| format!("({r},{c}):{}", state.get((r, c)).symbol())).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    let legal: Vec<String> = legal_moves(state).into_iter().map(|m| format!("'{}'", cell_name(m))).collect();
    out.push_str(&format!("All legal moves: [{}]\n", legal.join(", ")));
    out
}

/// Negamax value of `state` for the side to move: 1 win, 0 draw, -1 loss.
fn negamax(state: &mut GridState, mut alpha: i32, beta: i32) -> i32 {
    if line_winner(state).is_some() {
        return -1;
    }
    let moves = legal_moves(state);
    if moves.is_empty() {
        return 0;
    }
    let mut best = -2;
    for cell in moves {
        let mover = state.to_move;
        state.set(cell, mover);
        state.to_move = mover.opponent();
        let v = -negamax(state, -beta, -alpha);
        state.set(cell, Mark::Empty);
        state.to_move = mover;
        best = best.max(v);
        alpha = alpha.max(v);
        if alpha >= beta {
            break;
        }
    }
    best
}

/// A game-theoretically optimal move for small boards.
pub fn minimax_move(state: &GridState) -> Option<Cell> {
    let mut work = state.clone();
    let mut best: Option<(i32, Cell)> = None;
    for cell in legal_moves(state) {
        let mover = work.to_move;
        work.set(cell, mover);
        work.to_move = mover.opponent();
        let v = -negamax(&mut work, -2, 2);
        work.set(cell, Mark::Empty);
        work.to_move = mover;
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, cell));
        }
    }
    best.map(|(_, c)| c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineGame {
    pub id: GameId,
    pub rows: usize,
    pub cols: usize,
    pub gravity: bool,
    pub win_length: usize,
}

impl LineGame {
    pub const TIC_TAC_TOE: LineGame = LineGame { id: GameId::TicTacToe, rows: 3, cols: 3, gravity: false, win_length: 3 };
    pub const CONNECT4: LineGame = LineGame { id: GameId::Connect4, rows: 6, cols: 7, gravity: true, win_length: 4 };

    pub fn empty(&self) -> GridState {
        GridState {
            rows: self.rows,
            cols: self.cols,
            cells: vec![Mark::Empty; self.rows * self.cols],
            to_move: Mark::X,
            gravity: self.gravity,
            win_length: self.win_length,
        }
    }

    /// Win, else block, else a strategic move: perfect play on the 3x3
    /// board, and on Connect4 a central move that does not set up an
    /// opponent win directly above it.
    pub fn policy(&self, state: &GridState) -> Cell {
        if let Some(&c) = oracle_winning_moves(state, Whom::Mover).iter().next() {
            return c;
        }
        if let Some(&c) = oracle_winning_moves(state, Whom::Opponent).iter().next() {
            return c;
        }
        if !self.gravity {
            return minimax_move(state).expect("a legal move exists");
        }
        let legal = legal_moves(state);
        let center = self.cols as i32 / 2;
        let gives_away = |cell: Cell| {
            let next = apply_move(state, cell).expect("legal");
            !oracle_winning_moves(&next, Whom::Mover).is_empty()
        };
        *legal
            .iter()
            .min_by_key(|&&(r, c)| (gives_away((r, c)), (c as i32 - center).abs(), c))
            .expect("a legal move exists")
    }
}

impl Game for LineGame {
    type State = GridState;
    type Action = Cell;

    fn id(&self) -> GameId {
        self.id
    }

    fn initial_state(&self, _seed: u64) -> GridState {
        self.empty()
    }

    fn acting_seats(&self, state: &GridState) -> Vec<PlayerSeat> {
        if outcome(state) != Outcome::Ongoing {
            return vec![];
        }
        vec![if state.to_move == Mark::X { PlayerSeat::First } else { PlayerSeat::Second }]
    }

    fn legal_actions(&self, state: &GridState, _seat: PlayerSeat) -> Vec<Cell> {
        legal_moves(state)
    }

    fn render_state(&self, state: &GridState, _seat: PlayerSeat) -> String {
        render(state)
    }

    fn truths(&self, state: &GridState, _seat: PlayerSeat) -> Vec<Option<Payload>> {
        [Whom::Mover, Whom::Opponent]
            .into_iter()
            .map(|w| Some(Payload::set(oracle_winning_moves(state, w).into_iter().map(cell_name))))
            .collect()
    }

    fn format_action(&self, action: &Cell) -> String {
        cell_name(*action)
    }

    fn apply(&self, state: &GridState, actions: &[(PlayerSeat, Cell)]) -> Result<GridState> {
        match actions {
            [(_, cell)] => apply_move(state, *cell),
            _ => Err(ArenaError::IllegalMove("one action per turn".into())),
        }
    }

    fn status(&self, state: &GridState) -> GameStatus {
        match outcome(state) {
            Outcome::Ongoing => GameStatus::Ongoing,
            o => GameStatus::Finished { rewards: win_rewards(o.winner()), reason: TerminationReason::NaturalEnd },
        }
    }

    fn scripted_action(&self, state: &GridState, _seat: PlayerSeat, _truths: &[Option<Payload>]) -> Cell {
        self.policy(state)
    }
}

/// Parses a board written row by row as `(r,c):m` tokens.
pub fn parse_board(game: LineGame, text: &str, to_move: Mark) -> GridState {
    let mut state = game.empty();
    state.to_move = to_move;
    for token in text.split_whitespace() {
        let Some((coord, mark)) = token.split_once(':') else { continue };
        let coord = coord.trim_start_matches('(').trim_end_matches(')');
        let Some((r, c)) = coord.split_once(',') else { continue };
        let (Ok(r), Ok(c)) = (r.parse(), c.parse()) else { continue };
        let mark = match mark {
            "X" => Mark::X,
            "O" => Mark::O,
            _ => Mark::Empty,
        };
        state.set((r, c), mark);
    }
    state
}
