//! Independent brute-force oracles and seeded state samplers shared by the
//! integration suites. Nothing here calls the oracle it is checked against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use arena_core::games::checkers::{self, CheckersMove, CheckersState, Color, Piece};
use arena_core::games::grid::{self, GridState, LineGame, Mark};
use arena_core::games::holdem::cards::Card;
use arena_core::games::othello::{self, Disc, OthelloState};
use arena_core::games::surround::{self, SurroundState};
use arena_core::games::Outcome;
use arena_core::{derive_rng, ArenaRng};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rng(seed: u64) -> ArenaRng {
    derive_rng(seed, &[0xacce])
}

// ---------------------------------------------------------------- Othello

const KING_DIRS: [(i32, i32); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

fn inside(r: i32, c: i32) -> bool {
    (0..8).contains(&r) && (0..8).contains(&c)
}

/// Plays `color` at every empty square and keeps the squares where at
/// least one disc changes colour.
pub fn naive_othello_legal(board: &[[Disc; 8]; 8], color: Disc) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for r in 0..8 {
        for c in 0..8 {
            if board[r][c] != Disc::Empty {
                continue;
            }
            let changes = KING_DIRS.iter().any(|&(dr, dc)| {
                let line: Vec<Disc> = (1..8)
                    .map(|k| (r as i32 + k * dr, c as i32 + k * dc))
                    .take_while(|&(y, x)| inside(y, x))
                    .map(|(y, x)| board[y as usize][x as usize])
                    .collect();
                let opp_run = line.iter().take_while(|&&d| d == color.opponent()).count();
                opp_run > 0 && line.get(opp_run) == Some(&color)
            });
            if changes {
                out.insert((r, c));
            }
        }
    }
    out
}

pub fn naive_othello_corner(s: &OthelloState) -> bool {
    let legal = naive_othello_legal(&s.board, s.to_move);
    [(0, 0), (0, 7), (7, 0), (7, 7)].iter().any(|sq| legal.contains(sq))
}

/// For every legal edge square, walks outwards along each edge through it
/// and measures the empty run and what bounds it.
pub fn naive_othello_wedges(s: &OthelloState) -> BTreeSet<(usize, usize)> {
    let legal = naive_othello_legal(&s.board, s.to_move);
    let opp = s.to_move.opponent();
    let mut out = BTreeSet::new();
    for &(r, c) in &legal {
        let mut axes = vec![];
        if r == 0 || r == 7 {
            axes.push((0, 1));
        }
        if c == 0 || c == 7 {
            axes.push((1, 0));
        }
        for (dr, dc) in axes {
            let walk = |sign: i32| -> (usize, Option<Disc>) {
                let mut n = 0;
                let (mut y, mut x) = (r as i32 + sign * dr, c as i32 + sign * dc);
                while inside(y, x) && s.board[y as usize][x as usize] == Disc::Empty {
                    n += 1;
                    y += sign * dr;
                    x += sign * dc;
                }
                (n, inside(y, x).then(|| s.board[y as usize][x as usize]))
            };
            let (before, low) = walk(-1);
            let (after, high) = walk(1);
            let len = before + after + 1;
            if low == Some(opp) && high == Some(opp) && len % 2 == 1 && len <= 5 {
                out.insert((r, c));
            }
        }
    }
    out
}

pub fn random_othello(seed: u64) -> OthelloState {
    let mut rng = rng(seed);
    let mut s = OthelloState::initial();
    let plies = rng.gen_range(0..64);
    for _ in 0..plies {
        let legal = othello::legal_moves(&s);
        let Some(&mv) = legal.choose(&mut rng) else { break };
        s = othello::apply_move(&s, mv).unwrap();
    }
    s
}

// --------------------------------------------------------------- Checkers

/// Board as signed codes: 1 man, 2 king, positive for Black.
pub type Codes = [[i8; 8]; 8];

pub fn codes(board: &checkers::Board) -> Codes {
    let mut out = [[0; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            if let Some(p) = board[r][c] {
                let v = if p.king { 2 } else { 1 };
                out[r][c] = if p.color == Color::Black { v } else { -v };
            }
        }
    }
    out
}

/// A move as (path, captured squares in order).
pub type NaiveMove = (Vec<(usize, usize)>, Vec<(usize, usize)>);

fn sign(black: bool) -> i8 {
    if black {
        1
    } else {
        -1
    }
}

/// Every legal move for one side, found with an explicit stack of partial
/// jump sequences; captures are compulsory.
pub fn naive_checkers_moves(b: &Codes, black: bool) -> Vec<NaiveMove> {
    let me = sign(black);
    let forward: i32 = if black { -1 } else { 1 };
    let crown_row: i32 = if black { 0 } else { 7 };
    let mut jumps = Vec::new();
    let mut steps = Vec::new();
    for r in 0..8i32 {
        for c in 0..8i32 {
            let v = b[r as usize][c as usize];
            if v * me <= 0 {
                continue;
            }
            let king = v.abs() == 2;
            let dirs: Vec<(i32, i32)> = [(-1, -1), (-1, 1), (1, -1), (1, 1)]
                .into_iter()
                .filter(|&(dr, _)| king || dr == forward)
                .collect();
            for &(dr, dc) in &dirs {
                let (y, x) = (r + dr, c + dc);
                if inside(y, x) && b[y as usize][x as usize] == 0 {
                    steps.push((vec![(r as usize, c as usize), (y as usize, x as usize)], vec![]));
                }
            }
            let mut stack: Vec<NaiveMove> = vec![(vec![(r as usize, c as usize)], vec![])];
            while let Some((path, taken)) = stack.pop() {
                let (y, x) = (path.last().unwrap().0 as i32, path.last().unwrap().1 as i32);
                let crowned = !king && !taken.is_empty() && y == crown_row;
                let mut grew = false;
                if !crowned {
                    for &(dr, dc) in &dirs {
                        let (my, mx, ly, lx) = (y + dr, x + dc, y + 2 * dr, x + 2 * dc);
                        if !inside(ly, lx) {
                            continue;
                        }
                        let mid = (my as usize, mx as usize);
                        let land = (ly as usize, lx as usize);
                        let enemy = b[mid.0][mid.1] * me < 0;
                        let open = b[land.0][land.1] == 0 || land == path[0];
                        if enemy && open && !taken.contains(&mid) {
                            let mut p = path.clone();
                            p.push(land);
                            let mut t = taken.clone();
                            t.push(mid);
                            stack.push((p, t));
                            grew = true;
                        }
                    }
                }
                if !grew && !taken.is_empty() {
                    jumps.push((path, taken));
                }
            }
        }
    }
    let mut out = if jumps.is_empty() { steps } else { jumps };
    out.sort();
    out.dedup();
    out
}

pub fn naive_checkers_apply(b: &Codes, mv: &NaiveMove) -> Codes {
    let mut n = *b;
    let (from, to) = (mv.0[0], *mv.0.last().unwrap());
    let mut v = n[from.0][from.1];
    n[from.0][from.1] = 0;
    for &(r, c) in &mv.1 {
        n[r][c] = 0;
    }
    if (v == 1 && to.0 == 0) || (v == -1 && to.0 == 7) {
        v *= 2;
    }
    n[to.0][to.1] = v;
    n
}

pub fn path_text(path: &[(usize, usize)]) -> String {
    path.iter().map(|(r, c)| format!("({r},{c})")).collect::<Vec<_>>().join("->")
}

pub fn naive_new_king(b: &Codes, black: bool) -> BTreeSet<String> {
    naive_checkers_moves(b, black)
        .into_iter()
        .filter(|m| {
            let v = b[m.0[0].0][m.0[0].1];
            let to = m.0.last().unwrap().0;
            v.abs() == 1 && to == if black { 0 } else { 7 }
        })
        .map(|m| path_text(&m.0))
        .collect()
}

pub fn naive_worthless_die(b: &Codes, black: bool) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for m in naive_checkers_moves(b, black) {
        let landing = *m.0.last().unwrap();
        let after = naive_checkers_apply(b, &m);
        let mut doomed = false;
        for reply in naive_checkers_moves(&after, !black) {
            if !reply.1.contains(&landing) {
                continue;
            }
            let capturer = *reply.0.last().unwrap();
            let back = naive_checkers_apply(&after, &reply);
            let revenge = naive_checkers_moves(&back, black).iter().any(|x| x.1.contains(&capturer));
            if !revenge {
                doomed = true;
            }
        }
        if doomed {
            out.insert(path_text(&m.0));
        }
    }
    out
}

pub fn naive_two_for_one(b: &Codes, black: bool) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for m in naive_checkers_moves(b, black) {
        let landing = *m.0.last().unwrap();
        let after = naive_checkers_apply(b, &m);
        let replies = naive_checkers_moves(&after, !black);
        if replies.is_empty() || replies.iter().any(|r| r.1 != vec![landing]) {
            continue;
        }
        let pays = replies.iter().any(|r| {
            let back = naive_checkers_apply(&after, r);
            naive_checkers_moves(&back, black).iter().any(|x| x.1.len() >= 2)
        });
        if pays {
            out.insert(path_text(&m.0));
        }
    }
    out
}

pub fn move_texts(moves: &BTreeSet<CheckersMove>) -> BTreeSet<String> {
    moves.iter().map(|m| m.text()).collect()
}

/// Half the samples come from random play, half from random piece
/// placements, which produce far more tactical positions.
pub fn random_checkers(seed: u64) -> CheckersState {
    let mut rng = rng(seed);
    if seed % 2 == 0 {
        let mut s = CheckersState::initial();
        for _ in 0..rng.gen_range(0..80) {
            if checkers::outcome(&s) != Outcome::Ongoing {
                break;
            }
            let legal = checkers::legal_moves(&s);
            let mv = legal.choose(&mut rng).unwrap().clone();
            s = checkers::apply_move(&s, &mv).unwrap();
        }
        return s;
    }
    let mut board: checkers::Board = [[None; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            if (r + c) % 2 == 0 || !rng.gen_bool(0.35) {
                continue;
            }
            let color = if rng.gen_bool(0.5) { Color::Black } else { Color::White };
            let crown = if color == Color::Black { 0 } else { 7 };
            let king = r == crown || rng.gen_bool(0.15);
            board[r][c] = Some(if king { Piece::king(color) } else { Piece::man(color) });
        }
    }
    let to_move = if rng.gen_bool(0.5) { Color::Black } else { Color::White };
    CheckersState::from_board(board, to_move)
}

// ------------------------------------------------------------ Line games

/// Every window of `k` cells in a straight line.
fn windows(rows: usize, cols: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for r in 0..rows as i32 {
        for c in 0..cols as i32 {
            for (dr, dc) in [(0, 1), (1, 0), (1, 1), (1, -1)] {
                let cells: Vec<(i32, i32)> = (0..k as i32).map(|i| (r + i * dr, c + i * dc)).collect();
                if cells.iter().all(|&(y, x)| y >= 0 && x >= 0 && (y as usize) < rows && (x as usize) < cols) {
                    out.push(cells.into_iter().map(|(y, x)| (y as usize, x as usize)).collect());
                }
            }
        }
    }
    out
}

pub fn naive_has_line(s: &GridState, mark: Mark) -> bool {
    windows(s.rows, s.cols, s.win_length).iter().any(|w| w.iter().all(|&cell| s.get(cell) == mark))
}

/// Places the mark on each playable cell and checks all windows.
pub fn naive_winning_moves(s: &GridState, mark: Mark) -> BTreeSet<(usize, usize)> {
    if naive_has_line(s, Mark::X) || naive_has_line(s, Mark::O) {
        return BTreeSet::new();
    }
    let mut out = BTreeSet::new();
    for r in 0..s.rows {
        for c in 0..s.cols {
            if s.get((r, c)) != Mark::Empty {
                continue;
            }
            if s.gravity && r > 0 && s.get((r - 1, c)) == Mark::Empty {
                continue;
            }
            let mut t = s.clone();
            t.set((r, c), mark);
            if naive_has_line(&t, mark) {
                out.insert((r, c));
            }
        }
    }
    out
}

pub fn random_line_state(game: LineGame, seed: u64) -> GridState {
    let mut rng = rng(seed);
    let mut s = game.empty();
    let plies = rng.gen_range(0..=game.rows * game.cols);
    for _ in 0..plies {
        let legal = grid::legal_moves(&s);
        let Some(&mv) = legal.choose(&mut rng) else { break };
        s = grid::apply_move(&s, mv).unwrap();
    }
    s
}

// ---------------------------------------------------------------- Surround

pub fn random_surround(seed: u64) -> SurroundState {
    let mut rng = rng(seed);
    let mut s = surround::initial();
    for _ in 0..rng.gen_range(0..150) {
        let mut dirs = [surround::Dir::Up; 2];
        for (i, seat) in arena_core::PlayerSeat::BOTH.into_iter().enumerate() {
            let grid = surround::view(&s, seat);
            let open: Vec<surround::Dir> =
                surround::surround_oracle_valid_actions(&grid, s.heads[i]).into_iter().collect();
            dirs[i] = *open.choose(&mut rng).unwrap_or(&surround::Dir::Up);
        }
        let next = surround::surround_step(&s, dirs[0], dirs[1]).unwrap();
        if next.outcome != Outcome::Ongoing {
            break;
        }
        s = next;
    }
    s
}

/// Depth-first count of the empty cells reachable from `start`.
pub fn naive_region(grid: &[Vec<i64>], start: (usize, usize)) -> usize {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some((r, c)) = stack.pop() {
        let around = [(r as i64 - 1, c as i64), (r as i64 + 1, c as i64), (r as i64, c as i64 - 1), (r as i64, c as i64 + 1)];
        for (y, x) in around {
            if y < 0 || x < 0 || y as usize >= grid.len() || x as usize >= grid[0].len() {
                continue;
            }
            let cell = (y as usize, x as usize);
            if grid[cell.0][cell.1] == 0 && seen.insert(cell) {
                stack.push(cell);
            }
        }
    }
    seen.len()
}

// ------------------------------------------------------------------ Cards

/// Category 1..10 of exactly five cards, from sorted ranks and suits.
pub fn naive_category5(cards: &[Card]) -> (u8, Vec<u8>) {
    let mut ranks: Vec<u8> = cards.iter().map(|c| c.rank()).collect();
    ranks.sort_unstable_by(|a, b| b.cmp(a));
    let flush = cards.iter().all(|c| c.suit() == cards[0].suit());
    let distinct: BTreeSet<u8> = ranks.iter().copied().collect();
    let straight_top = if distinct.len() == 5 && ranks[0] - ranks[4] == 4 {
        Some(ranks[0])
    } else if ranks == [12, 3, 2, 1, 0] {
        Some(3)
    } else {
        None
    };
    // Groups by (count, rank), largest first.
    let mut groups: Vec<(usize, u8)> =
        distinct.iter().map(|&r| (ranks.iter().filter(|&&x| x == r).count(), r)).collect();
    groups.sort_unstable_by(|a, b| b.cmp(a));
    let by_group: Vec<u8> = groups.iter().map(|g| g.1).collect();
    let shape: Vec<usize> = groups.iter().map(|g| g.0).collect();
    match (flush, straight_top, shape.as_slice()) {
        (true, Some(12), _) => (1, vec![12]),
        (true, Some(t), _) => (2, vec![t]),
        (_, _, [4, 1]) => (3, by_group),
        (_, _, [3, 2]) => (4, by_group),
        (true, None, _) => (5, ranks),
        (false, Some(t), _) => (6, vec![t]),
        (_, _, [3, 1, 1]) => (7, by_group),
        (_, _, [2, 2, 1]) => (8, by_group),
        (_, _, [2, 1, 1, 1]) => (9, by_group),
        _ => (10, ranks),
    }
}

/// Best hand over every 5-card subset; larger tuples are better.
pub fn naive_best(cards: &[Card]) -> (u8, Vec<u8>) {
    let n = cards.len();
    let mut best: Option<(u8, Vec<u8>)> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != 5 {
            continue;
        }
        let five: Vec<Card> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| cards[i]).collect();
        let (cat, tb) = naive_category5(&five);
        let better = match &best {
            None => true,
            Some((bc, btb)) => cat < *bc || (cat == *bc && tb > *btb),
        };
        if better {
            best = Some((cat, tb));
        }
    }
    best.unwrap()
}
