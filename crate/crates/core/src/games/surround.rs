//! Simultaneous-move Surround on a walled 20 x 40 grid. Each head leaves
//! a trail of wall behind it; the first to crash loses.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{win_rewards, Outcome};
use crate::catalog::GameId;
use crate::engine::record::{PlayerSeat, TerminationReason};
use crate::engine::{Game, GameStatus};
use crate::error::{ArenaError, Result};
use crate::payload::Payload;

pub const ROWS: usize = 20;
pub const COLS: usize = 40;
pub const SAFE_REGION: usize = 10;
pub const START: [Cell; 2] = [(10, 10), (10, 29)];

pub const EMPTY: i64 = 0;
pub const WALL: i64 = 1;
pub const MY_LAST: i64 = 2;
pub const MY_HEAD: i64 = 3;
pub const OPP_LAST: i64 = 4;
pub const OPP_HEAD: i64 = 5;
pub const OUTSIDE: i64 = -1;

pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    Up,
    Down,
    Left,
    Right,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::Up, Dir::Down, Dir::Left, Dir::Right];

    pub fn name(self) -> &'static str {
        match self {
            Dir::Up => "Up",
            Dir::Down => "Down",
            Dir::Left => "Left",
            Dir::Right => "Right",
        }
    }

    pub fn action(self) -> String {
        format!("Move {}", self.name())
    }

    fn offset(self) -> (i64, i64) {
        match self {
            Dir::Up => (-1, 0),
            Dir::Down => (1, 0),
            Dir::Left => (0, -1),
            Dir::Right => (0, 1),
        }
    }
}

/// Neighbour of `cell` in `dir`, if it lies on a `rows` x `cols` grid.
pub fn neighbour((r, c): Cell, dir: Dir, rows: usize, cols: usize) -> Option<Cell> {
    let (dr, dc) = dir.offset();
    let (nr, nc) = (r as i64 + dr, c as i64 + dc);
    (nr >= 0 && nc >= 0 && (nr as usize) < rows && (nc as usize) < cols).then(|| (nr as usize, nc as usize))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurroundState {
    /// Cells that can no longer be entered: the border, both trails and
    /// both heads.
    pub occupied: Vec<bool>,
    pub heads: [Cell; 2],
    /// Every cell each head has visited, oldest first, ending at the head.
    pub trails: [Vec<Cell>; 2],
    pub tick: u32,
    pub outcome: Outcome,
}

impl SurroundState {
    pub fn is_occupied(&self, (r, c): Cell) -> bool {
        self.occupied[r * COLS + c]
    }

    fn occupy(&mut self, (r, c): Cell) {
        self.occupied[r * COLS + c] = true;
    }

    pub fn last(&self, seat: PlayerSeat) -> Option<Cell> {
        let trail = &self.trails[seat.index()];
        trail.len().checked_sub(2).map(|i| trail[i])
    }

    pub fn free_cells(&self) -> usize {
        self.occupied.iter().filter(|o| !**o).count()
    }
}

pub fn initial() -> SurroundState {
    let mut s = SurroundState {
        occupied: vec![false; ROWS * COLS],
        heads: START,
        trails: [vec![START[0]], vec![START[1]]],
        tick: 0,
        outcome: Outcome::Ongoing,
    };
    for r in 0..ROWS {
        for c in 0..COLS {
            if r == 0 || c == 0 || r == ROWS - 1 || c == COLS - 1 {
                s.occupy((r, c));
            }
        }
    }
    s.occupy(START[0]);
    s.occupy(START[1]);
    s
}

pub fn surround_step(state: &SurroundState, first: Dir, second: Dir) -> Result<SurroundState> {
    if state.outcome != Outcome::Ongoing {
        return Err(ArenaError::IllegalMove("the game is over".into()));
    }
    let targets = [
        neighbour(state.heads[0], first, ROWS, COLS),
        neighbour(state.heads[1], second, ROWS, COLS),
    ];
    let blocked = |t: Option<Cell>| t.is_none_or(|cell| state.is_occupied(cell));
    let head_on = targets[0].is_some() && targets[0] == targets[1];
    let crashed = [blocked(targets[0]) || head_on, blocked(targets[1]) || head_on];
    let mut s = state.clone();
    s.tick += 1;
    s.outcome = match crashed {
        [true, true] => Outcome::Draw,
        [true, false] => Outcome::SecondWins,
        [false, true] => Outcome::FirstWins,
        [false, false] => Outcome::Ongoing,
    };
    if s.outcome == Outcome::Ongoing {
        for seat in 0..2 {
            let cell = targets[seat].expect("not crashed");
            s.occupy(cell);
            s.heads[seat] = cell;
            s.trails[seat].push(cell);
        }
    }
    Ok(s)
}

/// The grid as `seat` sees it.
pub fn view(state: &SurroundState, seat: PlayerSeat) -> Vec<Vec<i64>> {
    let mut grid: Vec<Vec<i64>> = (0..ROWS)
        .map(|r| (0..COLS).map(|c| if state.is_occupied((r, c)) { WALL } else { EMPTY }).collect())
        .collect();
    let me = seat;
    let opp = seat.other();
    for (who, last, head) in [(opp, OPP_LAST, OPP_HEAD), (me, MY_LAST, MY_HEAD)] {
        if let Some((r, c)) = state.last(who) {
            grid[r][c] = last;
        }
        let (r, c) = state.heads[who.index()];
        grid[r][c] = head;
    }
    grid
}

/// Values next to `head` in each direction, -1 off the grid.
pub fn surround_oracle_adjacent(grid: &[Vec<i64>], head: Cell) -> BTreeMap<Dir, i64> {
    let (rows, cols) = (grid.len(), grid[0].len());
    Dir::ALL
        .into_iter()
        .map(|d| (d, neighbour(head, d, rows, cols).map_or(OUTSIDE, |(r, c)| grid[r][c])))
        .collect()
}

pub fn surround_oracle_valid_actions(grid: &[Vec<i64>], head: Cell) -> BTreeSet<Dir> {
    surround_oracle_adjacent(grid, head).into_iter().filter(|(_, v)| *v == EMPTY).map(|(d, _)| d).collect()
}

/// Size of the 4-connected empty region containing `start`, counting
/// `start` itself, explored until `limit` cells are found.
pub fn region_size(grid: &[Vec<i64>], start: Cell, limit: usize) -> usize {
    let (rows, cols) = (grid.len(), grid[0].len());
    let mut seen = vec![vec![false; cols]; rows];
    let mut queue = VecDeque::from([start]);
    seen[start.0][start.1] = true;
    let mut found = 0;
    while let Some(cell) = queue.pop_front() {
        found += 1;
        if found >= limit {
            break;
        }
        for d in Dir::ALL {
            if let Some((r, c)) = neighbour(cell, d, rows, cols) {
                if !seen[r][c] && grid[r][c] == EMPTY {
                    seen[r][c] = true;
                    queue.push_back((r, c));
                }
            }
        }
    }
    found
}

/// Safe or unsafe for every valid action.
pub fn surround_oracle_safety(grid: &[Vec<i64>], head: Cell) -> BTreeMap<Dir, bool> {
    let (rows, cols) = (grid.len(), grid[0].len());
    surround_oracle_valid_actions(grid, head)
        .into_iter()
        .map(|d| {
            let landing = neighbour(head, d, rows, cols).expect("valid actions stay on the grid");
            (d, region_size(grid, landing, SAFE_REGION) >= SAFE_REGION)
        })
        .collect()
}

pub fn render(state: &SurroundState, seat: PlayerSeat) -> String {
    let grid = view(state, seat);
    let trace: Vec<String> = state.trails[seat.index()].iter().map(|(r, c)| format!("({r},{c})")).collect();
    let mut out = format!("Your moving trace: [{}]\nGame state:\n", trace.join(", "));
    for (r, row) in grid.iter().enumerate() {
        let cells: Vec<String> = row.iter().enumerate().map(|(c, v)| format!("({r},{c}):{v}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Surround;

impl Game for Surround {
    type State = SurroundState;
    type Action = Dir;

    fn id(&self) -> GameId {
        GameId::Surround
    }

    fn initial_state(&self, _seed: u64) -> SurroundState {
        initial()
    }

    fn acting_seats(&self, state: &SurroundState) -> Vec<PlayerSeat> {
        if state.outcome == Outcome::Ongoing {
            vec![PlayerSeat::First, PlayerSeat::Second]
        } else {
            vec![]
        }
    }

    fn legal_actions(&self, _state: &SurroundState, _seat: PlayerSeat) -> Vec<Dir> {
        Dir::ALL.to_vec()
    }

    fn render_state(&self, state: &SurroundState, seat: PlayerSeat) -> String {
        render(state, seat)
    }

    fn truths(&self, state: &SurroundState, seat: PlayerSeat) -> Vec<Option<Payload>> {
        let grid = view(state, seat);
        let head = state.heads[seat.index()];
        let adjacent = surround_oracle_adjacent(&grid, head);
        let valid = surround_oracle_valid_actions(&grid, head);
        let safety = surround_oracle_safety(&grid, head);
        vec![
            Some(Payload::map(adjacent.into_iter().map(|(d, v)| (d.name(), v.to_string())))),
            Some(Payload::set(valid.into_iter().map(Dir::action))),
            Some(Payload::map(
                safety.into_iter().map(|(d, safe)| (d.action(), if safe { "Safe" } else { "Unsafe" })),
            )),
        ]
    }

    fn format_action(&self, action: &Dir) -> String {
        action.action()
    }

    fn apply(&self, state: &SurroundState, actions: &[(PlayerSeat, Dir)]) -> Result<SurroundState> {
        let pick = |seat| {
            actions
                .iter()
                .find(|(s, _)| *s == seat)
                .map(|(_, d)| *d)
                .ok_or_else(|| ArenaError::IllegalMove(format!("no action for {seat:?}")))
        };
        surround_step(state, pick(PlayerSeat::First)?, pick(PlayerSeat::Second)?)
    }

    fn status(&self, state: &SurroundState) -> GameStatus {
        match state.outcome {
            Outcome::Ongoing => GameStatus::Ongoing,
            o => GameStatus::Finished { rewards: win_rewards(o.winner()), reason: TerminationReason::NaturalEnd },
        }
    }

    /// The safe move with the most room; failing that, any open move with
    /// the most room.
    fn scripted_action(&self, state: &SurroundState, seat: PlayerSeat, _truths: &[Option<Payload>]) -> Dir {
        let grid = view(state, seat);
        let head = state.heads[seat.index()];
        surround_oracle_valid_actions(&grid, head)
            .into_iter()
            .max_by_key(|&d| {
                let landing = neighbour(head, d, ROWS, COLS).expect("valid");
                let room = region_size(&grid, landing, usize::MAX);
                (room >= SAFE_REGION, room, std::cmp::Reverse(d))
            })
            .unwrap_or(Dir::Up)
    }
}
