//! American checkers on the dark squares of an 8x8 board, with forced
//! captures, multi-jumps, kings and the two draw rules.

use std::collections::BTreeSet;

use super::{win_rewards, Outcome};
use crate::catalog::GameId;
use crate::engine::record::{PlayerSeat, TerminationReason};
use crate::engine::{Game, GameStatus};
use crate::error::{ArenaError, Result};
use crate::payload::Payload;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opponent(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    /// Row direction of forward movement.
    fn forward(self) -> i32 {
        match self {
            Color::Black => -1,
            Color::White => 1,
        }
    }

    fn king_row(self) -> usize {
        match self {
            Color::Black => 0,
            Color::White => 7,
        }
    }

    fn seat(self) -> PlayerSeat {
        match self {
            Color::Black => PlayerSeat::First,
            Color::White => PlayerSeat::Second,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Piece {
    pub color: Color,
    pub king: bool,
}

impl Piece {
    pub fn man(color: Color) -> Piece {
        Piece { color, king: false }
    }

    pub fn king(color: Color) -> Piece {
        Piece { color, king: true }
    }

    fn symbol(self) -> char {
        match (self.color, self.king) {
            (Color::Black, false) => 'b',
            (Color::Black, true) => 'B',
            (Color::White, false) => 'w',
            (Color::White, true) => 'W',
        }
    }
}

pub type Square = (usize, usize);
pub type Board = [[Option<Piece>; 8]; 8];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CheckersMove {
    /// Start square followed by every landing square.
    pub path: Vec<Square>,
    pub captured: Vec<Square>,
}

impl CheckersMove {
    pub fn is_capture(&self) -> bool {
        !self.captured.is_empty()
    }

    pub fn from(&self) -> Square {
        self.path[0]
    }

    pub fn to(&self) -> Square {
        *self.path.last().expect("non-empty path")
    }

    pub fn text(&self) -> String {
        self.path.iter().map(|(r, c)| format!("({r},{c})")).collect::<Vec<_>>().join("->")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CheckersState {
    pub board: Board,
    pub to_move: Color,
    /// Moves in a row, by either side, without a capture.
    pub halfmove_no_capture: u32,
    /// Keys of every position reached so far, including this one.
    pub position_history: Vec<u128>,
}

pub fn is_dark((r, c): Square) -> bool {
    (r + c) % 2 == 1
}

fn position_key(board: &Board, to_move: Color) -> u128 {
    let mut key: u128 = (to_move == Color::White) as u128;
    for r in 0..8 {
        for c in 0..8 {
            if !is_dark((r, c)) {
                continue;
            }
            let code = match board[r][c] {
                None => 0u128,
                Some(Piece { color: Color::Black, king: false }) => 1,
                Some(Piece { color: Color::Black, king: true }) => 2,
                Some(Piece { color: Color::White, king: false }) => 3,
                Some(Piece { color: Color::White, king: true }) => 4,
            };
            key = key * 5 + code;
        }
    }
    key
}

impl CheckersState {
    pub fn initial() -> CheckersState {
        let mut board: Board = [[None; 8]; 8];
        for r in 0..8 {
            for c in 0..8 {
                if is_dark((r, c)) {
                    if r <= 2 {
                        board[r][c] = Some(Piece::man(Color::White));
                    } else if r >= 5 {
                        board[r][c] = Some(Piece::man(Color::Black));
                    }
                }
            }
        }
        CheckersState::from_board(board, Color::Black)
    }

    pub fn from_board(board: Board, to_move: Color) -> CheckersState {
        CheckersState { board, to_move, halfmove_no_capture: 0, position_history: vec![position_key(&board, to_move)] }
    }

    pub fn count(&self, color: Color) -> usize {
        self.board.iter().flatten().flatten().filter(|p| p.color == color).count()
    }
}

fn on_board(r: i32, c: i32) -> bool {
    (0..8).contains(&r) && (0..8).contains(&c)
}

fn directions(piece: Piece) -> Vec<(i32, i32)> {
    let f = piece.color.forward();
    if piece.king {
        vec![(-1, -1), (-1, 1), (1, -1), (1, 1)]
    } else {
        vec![(f, -1), (f, 1)]
    }
}

/// Extends a jump chain from `at`. A chain stops when no further jump
/// exists, or when a man reaches its king row.
fn extend_jumps(board: &Board, piece: Piece, path: &mut Vec<Square>, captured: &mut Vec<Square>, out: &mut Vec<CheckersMove>) {
    let (r, c) = *path.last().expect("non-empty");
    let mut extended = false;
    let promoted_now = !piece.king && !captured.is_empty() && r == piece.color.king_row();
    if !promoted_now {
        for (dr, dc) in directions(piece) {
            let (mr, mc) = (r as i32 + dr, c as i32 + dc);
            let (lr, lc) = (r as i32 + 2 * dr, c as i32 + 2 * dc);
            if !on_board(lr, lc) {
                continue;
            }
            let mid = (mr as usize, mc as usize);
            let land = (lr as usize, lc as usize);
            let over = board[mid.0][mid.1];
            let land_free = board[land.0][land.1].is_none() || land == path[0];
            if over.is_some_and(|p| p.color != piece.color) && !captured.contains(&mid) && land_free {
                path.push(land);
                captured.push(mid);
                extend_jumps(board, piece, path, captured, out);
                path.pop();
                captured.pop();
                extended = true;
            }
        }
    }
    if !extended && !captured.is_empty() {
        out.push(CheckersMove { path: path.clone(), captured: captured.clone() });
    }
}

pub fn legal_moves_for(board: &Board, color: Color) -> Vec<CheckersMove> {
    let mut captures = Vec::new();
    let mut simple = Vec::new();
    for r in 0..8 {
        for c in 0..8 {
            let Some(piece) = board[r][c].filter(|p| p.color == color) else { continue };
            extend_jumps(board, piece, &mut vec![(r, c)], &mut Vec::new(), &mut captures);
            for (dr, dc) in directions(piece) {
                let (nr, nc) = (r as i32 + dr, c as i32 + dc);
                if on_board(nr, nc) && board[nr as usize][nc as usize].is_none() {
                    simple.push(CheckersMove { path: vec![(r, c), (nr as usize, nc as usize)], captured: vec![] });
                }
            }
        }
    }
    let mut moves = if captures.is_empty() { simple } else { captures };
    moves.sort();
    moves.dedup();
    moves
}

/// Legal moves for the side to move. Captures are forced.
pub fn legal_moves(state: &CheckersState) -> Vec<CheckersMove> {
    legal_moves_for(&state.board, state.to_move)
}

fn apply_on_board(board: &Board, mv: &CheckersMove) -> Board {
    let mut next = *board;
    let (fr, fc) = mv.from();
    let mut piece = next[fr][fc].take().expect("piece on start square");
    for &(r, c) in &mv.captured {
        next[r][c] = None;
    }
    let (tr, tc) = mv.to();
    if tr == piece.color.king_row() {
        piece.king = true;
    }
    next[tr][tc] = Some(piece);
    next
}

pub fn apply_move(state: &CheckersState, mv: &CheckersMove) -> Result<CheckersState> {
    if !legal_moves(state).contains(mv) {
        return Err(ArenaError::IllegalMove(format!("{} is not legal", mv.text())));
    }
    Ok(apply_unchecked(state, mv))
}

fn apply_unchecked(state: &CheckersState, mv: &CheckersMove) -> CheckersState {
    let board = apply_on_board(&state.board, mv);
    let to_move = state.to_move.opponent();
    let mut position_history = state.position_history.clone();
    position_history.push(position_key(&board, to_move));
    CheckersState {
        board,
        to_move,
        halfmove_no_capture: if mv.is_capture() { 0 } else { state.halfmove_no_capture + 1 },
        position_history,
    }
}

pub const NO_CAPTURE_DRAW: u32 = 40;

/// Decided outcome, and whether a draw came from a draw rule.
pub fn outcome(state: &CheckersState) -> Outcome {
    if legal_moves(state).is_empty() {
        return match state.to_move {
            Color::Black => Outcome::SecondWins,
            Color::White => Outcome::FirstWins,
        };
    }
    let current = *state.position_history.last().expect("history holds the current position");
    let repeats = state.position_history.iter().filter(|&&k| k == current).count();
    if state.halfmove_no_capture >= NO_CAPTURE_DRAW || repeats >= 3 {
        return Outcome::Draw;
    }
    Outcome::Ongoing
}

/// Moves that crown a man.
pub fn oracle_new_king(state: &CheckersState) -> BTreeSet<CheckersMove> {
    legal_moves(state)
        .into_iter()
        .filter(|m| {
            let piece = state.board[m.from().0][m.from().1].expect("piece");
            !piece.king && m.to().0 == piece.color.king_row()
        })
        .collect()
}

/// Moves after which the opponent can capture the moved piece and the
/// mover has no capture of the capturing piece in return.
pub fn oracle_worthless_die(state: &CheckersState) -> BTreeSet<CheckersMove> {
    let mover = state.to_move;
    legal_moves(state)
        .into_iter()
        .filter(|m| {
            let after = apply_on_board(&state.board, m);
            let landing = m.to();
            legal_moves_for(&after, mover.opponent()).iter().filter(|r| r.captured.contains(&landing)).any(|reply| {
                let back = apply_on_board(&after, reply);
                let capturer = reply.to();
                !legal_moves_for(&back, mover).iter().any(|x| x.captured.contains(&capturer))
            })
        })
        .collect()
}

/// Sacrifices of exactly the moved piece that every opponent reply must
/// take, and after at least one such reply the mover jumps two or more.
pub fn oracle_two_for_one(state: &CheckersState) -> BTreeSet<CheckersMove> {
    let mover = state.to_move;
    legal_moves(state)
        .into_iter()
        .filter(|m| {
            let after = apply_on_board(&state.board, m);
            let landing = m.to();
            let replies = legal_moves_for(&after, mover.opponent());
            !replies.is_empty()
                && replies.iter().all(|r| r.captured == [landing])
                && replies.iter().any(|r| {
                    let back = apply_on_board(&after, r);
                    legal_moves_for(&back, mover).iter().any(|x| x.captured.len() >= 2)
                })
        })
        .collect()
}

pub fn render(state: &CheckersState) -> String {
    let mut out = String::new();
    let (name, symbols) = match state.to_move {
        Color::Black => ("Black", "b, B"),
        Color::White => ("White", "w, W"),
    };
    out.push_str(&format!("You are playing {name} ({symbols}).\nCurrent Game Board:\n"));
    for r in 0..8 {
        let row: Vec<String> =
            (0..8).map(|c| format!("({r},{c}):{}", state.board[r][c].map_or('_', Piece::symbol))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let legal: Vec<String> = legal_moves(state).iter().map(|m| format!("'{}'", m.text())).collect();
    out.push_str(&format!("All legal moves: [{}]\n", legal.join(", ")));
    out
}

fn parse_path(text: &str) -> Option<Vec<Square>> {
    text.split("->")
        .map(|part| {
            let inner = part.trim().strip_prefix('(')?.strip_suffix(')')?;
            let (r, c) = inner.split_once(',')?;
            Some((r.trim().parse().ok()?, c.trim().parse().ok()?))
        })
        .collect()
}

/// Full path text for `text`, expanding a start-and-end abbreviation of a
/// multi-jump when exactly one legal chain matches it.
pub fn expand_path(state: &CheckersState, text: &str) -> Option<String> {
    let path = parse_path(text)?;
    let legal = legal_moves(state);
    if let Some(m) = legal.iter().find(|m| m.path == path) {
        return Some(m.text());
    }
    if path.len() != 2 {
        return None;
    }
    let matching: Vec<&CheckersMove> =
        legal.iter().filter(|m| m.path.len() > 2 && m.from() == path[0] && m.to() == path[1]).collect();
    match matching.as_slice() {
        [only] => Some(only.text()),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Checkers;

fn move_set(moves: BTreeSet<CheckersMove>) -> Payload {
    Payload::set(moves.iter().map(CheckersMove::text))
}

impl Game for Checkers {
    type State = CheckersState;
    type Action = CheckersMove;

    fn id(&self) -> GameId {
        GameId::Checkers
    }

    fn initial_state(&self, _seed: u64) -> CheckersState {
        CheckersState::initial()
    }

    fn acting_seats(&self, state: &CheckersState) -> Vec<PlayerSeat> {
        if outcome(state) == Outcome::Ongoing {
            vec![state.to_move.seat()]
        } else {
            vec![]
        }
    }

    fn legal_actions(&self, state: &CheckersState, _seat: PlayerSeat) -> Vec<CheckersMove> {
        legal_moves(state)
    }

    fn render_state(&self, state: &CheckersState, _seat: PlayerSeat) -> String {
        render(state)
    }

    fn truths(&self, state: &CheckersState, _seat: PlayerSeat) -> Vec<Option<Payload>> {
        vec![
            Some(move_set(oracle_new_king(state))),
            Some(move_set(oracle_worthless_die(state))),
            Some(move_set(oracle_two_for_one(state))),
        ]
    }

    fn canonicalize_intermediate(&self, state: &CheckersState, _seat: PlayerSeat, _index: usize, value: &mut Payload) {
        if let Payload::Set(items) = value {
            *items = items.iter().map(|m| expand_path(state, m).unwrap_or_else(|| m.clone())).collect();
        }
    }

    fn format_action(&self, action: &CheckersMove) -> String {
        action.text()
    }

    fn resolve_action(&self, state: &CheckersState, _seat: PlayerSeat, text: &str) -> Option<CheckersMove> {
        let full = expand_path(state, text)?;
        legal_moves(state).into_iter().find(|m| m.text() == full)
    }

    fn apply(&self, state: &CheckersState, actions: &[(PlayerSeat, CheckersMove)]) -> Result<CheckersState> {
        match actions {
            [(_, mv)] => apply_move(state, mv),
            _ => Err(ArenaError::IllegalMove("Checkers takes one action per turn".into())),
        }
    }

    fn status(&self, state: &CheckersState) -> GameStatus {
        match outcome(state) {
            Outcome::Ongoing => GameStatus::Ongoing,
            Outcome::Draw => GameStatus::Finished { rewards: [0.0, 0.0], reason: TerminationReason::DrawRule },
            o => GameStatus::Finished { rewards: win_rewards(o.winner()), reason: TerminationReason::NaturalEnd },
        }
    }

    /// Longest capture, then a crowning move, then any move that does not
    /// hand the opponent a free piece.
    fn scripted_action(&self, state: &CheckersState, _seat: PlayerSeat, _truths: &[Option<Payload>]) -> CheckersMove {
        let legal = legal_moves(state);
        let kings = oracle_new_king(state);
        let bad = oracle_worthless_die(state);
        legal
            .iter()
            .max_by_key(|m| (m.captured.len(), kings.contains(m), !bad.contains(m), std::cmp::Reverse(m.path.clone())))
            .cloned()
            .expect("a legal move exists")
    }
}
