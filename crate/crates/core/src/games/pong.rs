//! Two-paddle Pong on integer coordinates. The right paddle (x = 140)
//! belongs to the first seat, the left paddle (x = 20) to the second;
//! the second seat sees the court mirrored so that its own paddle is
//! always on the right.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::win_rewards;
use crate::catalog::GameId;
use crate::engine::record::{PlayerSeat, TerminationReason};
use crate::engine::{Game, GameStatus, GAME_STREAM};
use crate::error::{ArenaError, Result};
use crate::payload::Payload;
use crate::rng::derive_rng;

pub const LOWER_WALL: i32 = 16;
pub const UPPER_WALL: i32 = 176;
pub const PLAYER_X: i32 = 140;
pub const OPPONENT_X: i32 = 20;
pub const PADDLE_HEIGHT: i32 = 16;
pub const PADDLE_SPEED: i32 = 4;
pub const FRAMES_PER_DECISION: usize = 3;
pub const SERVE_X: i32 = 80;
pub const POINTS_TO_WIN: u32 = 5;
/// Target height used when the ball travels away from the paddle.
pub const MID_COURT: i64 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PongAction {
    Stay,
    Up,
    Down,
}

impl PongAction {
    pub const ALL: [PongAction; 3] = [PongAction::Stay, PongAction::Up, PongAction::Down];

    pub fn label(self) -> &'static str {
        match self {
            PongAction::Stay => "Stay Still",
            PongAction::Up => "Move Up",
            PongAction::Down => "Move Down",
        }
    }

    fn delta(self) -> i32 {
        match self {
            PongAction::Stay => 0,
            PongAction::Up => PADDLE_SPEED,
            PongAction::Down => -PADDLE_SPEED,
        }
    }
}

/// One observed frame in court coordinates. Paddles are stored by their
/// lower edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame {
    pub ball: (i32, i32),
    pub right_paddle: i32,
    pub left_paddle: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PongState {
    pub ball: (i32, i32),
    pub velocity: (i32, i32),
    pub right_paddle: i32,
    pub left_paddle: i32,
    /// Points for the right and left paddle.
    pub score: [u32; 2],
    pub frame_index: u64,
    pub serves: u64,
    /// Most recent frames, oldest first.
    pub history: Vec<Frame>,
    seed: u64,
}

impl PongState {
    fn frame(&self) -> Frame {
        Frame { ball: self.ball, right_paddle: self.right_paddle, left_paddle: self.left_paddle }
    }

    fn serve(&mut self) {
        let mut rng = derive_rng(self.seed, &[GAME_STREAM, self.serves]);
        self.serves += 1;
        let dx = [2, 4][rng.gen_range(0..2)] * if rng.gen_bool(0.5) { 1 } else { -1 };
        let dy = [2, 4, 8][rng.gen_range(0..3)] * if rng.gen_bool(0.5) { 1 } else { -1 };
        self.ball = (SERVE_X, rng.gen_range(40..=152));
        self.velocity = (dx, dy);
    }
}

pub fn initial(seed: u64) -> PongState {
    let paddle = MID_COURT as i32 - PADDLE_HEIGHT / 2;
    let mut s = PongState {
        ball: (SERVE_X, MID_COURT as i32),
        velocity: (0, 0),
        right_paddle: paddle,
        left_paddle: paddle,
        score: [0, 0],
        frame_index: 0,
        serves: 0,
        history: vec![],
        seed,
    };
    s.serve();
    s.history.push(s.frame());
    s
}

fn move_paddle(lower: i32, action: PongAction) -> i32 {
    (lower + action.delta()).clamp(LOWER_WALL, UPPER_WALL - PADDLE_HEIGHT)
}

fn covers(lower: i32, y: i32) -> bool {
    (lower..=lower + PADDLE_HEIGHT).contains(&y)
}

/// Advances one physics frame.
pub fn pong_step(state: &PongState, right: PongAction, left: PongAction) -> PongState {
    let mut s = state.clone();
    s.right_paddle = move_paddle(s.right_paddle, right);
    s.left_paddle = move_paddle(s.left_paddle, left);
    let (dx, mut dy) = s.velocity;
    let x = s.ball.0 + dx;
    let mut y = s.ball.1 + dy;
    if y > UPPER_WALL {
        y = 2 * UPPER_WALL - y;
        dy = -dy;
    } else if y < LOWER_WALL {
        y = 2 * LOWER_WALL - y;
        dy = -dy;
    }
    s.ball = (x, y);
    s.velocity = (dx, dy);
    if dx > 0 && x >= PLAYER_X {
        if covers(s.right_paddle, y) {
            s.velocity.0 = -dx;
        } else {
            s.score[1] += 1;
            s.serve();
        }
    } else if dx < 0 && x <= OPPONENT_X {
        if covers(s.left_paddle, y) {
            s.velocity.0 = -dx;
        } else {
            s.score[0] += 1;
            s.serve();
        }
    }
    s.frame_index += 1;
    s.history.push(s.frame());
    if s.history.len() > FRAMES_PER_DECISION {
        s.history.remove(0);
    }
    s
}

/// The last `k` frames, padded at the front by repeating the oldest.
pub fn pong_observe(state: &PongState, k: usize) -> Vec<Frame> {
    let recent = &state.history[state.history.len().saturating_sub(k)..];
    let mut out = vec![recent[0]; k - recent.len()];
    out.extend_from_slice(recent);
    out
}

/// Mirrors a frame left to right, so the left paddle becomes the player.
pub fn mirror(frame: Frame) -> Frame {
    Frame {
        ball: (PLAYER_X + OPPONENT_X - frame.ball.0, frame.ball.1),
        right_paddle: frame.left_paddle,
        left_paddle: frame.right_paddle,
    }
}

pub fn render_frames(frames: &[Frame]) -> String {
    let mut out = String::new();
    for (i, f) in frames.iter().enumerate() {
        out.push_str(&format!(
            "Frame {}\n{{'ball_x': {}, 'ball_y': {}, 'player_x': {PLAYER_X}, 'player_y': [{}, {}], 'opponent_x': {OPPONENT_X}, 'opponent_y': [{}, {}], 'upper_bound': {UPPER_WALL}, 'lower_bound': {LOWER_WALL}}}\n",
            i + 1,
            f.ball.0,
            f.ball.1,
            f.right_paddle,
            f.right_paddle + PADDLE_HEIGHT,
            f.left_paddle,
            f.left_paddle + PADDLE_HEIGHT,
        ));
    }
    out
}

/// Direction label from a displacement: the sign of x gives Left/Right,
/// the sign of y gives Up (larger y) or Down.
pub fn direction_label(dx: i32, dy: i32) -> Option<&'static str> {
    match (dx.signum(), dy.signum()) {
        (1, 1) => Some("Right Up"),
        (1, -1) => Some("Right Down"),
        (-1, 1) => Some("Left Up"),
        (-1, -1) => Some("Left Down"),
        _ => None,
    }
}

/// Direction seen across the last two frames with distinct positions.
pub fn pong_oracle_direction(frames: &[Frame]) -> Option<&'static str> {
    let [.., a, b] = frames else { return None };
    direction_label(b.ball.0 - a.ball.0, b.ball.1 - a.ball.1)
}

/// Height at which a ball at `(x, y)` with velocity `(dx, dy)`, dx > 0,
/// crosses the player's paddle plane, folding the straight-line
/// extrapolation back between the walls.
pub fn intercept_y(x: i32, y: i32, dx: i32, dy: i32) -> Option<i64> {
    if dx <= 0 {
        return None;
    }
    let (x, y, dx, dy) = (x as i64, y as i64, dx as i64, dy as i64);
    let span = (UPPER_WALL - LOWER_WALL) as i64;
    // raw - 16 as a fraction over dx.
    let num = y * dx + dy * (PLAYER_X as i64 - x) - LOWER_WALL as i64 * dx;
    let period = 2 * span * dx;
    let mut t = num.rem_euclid(period);
    if t > span * dx {
        t = period - t;
    }
    let rounded = (2 * t + dx) / (2 * dx);
    Some(LOWER_WALL as i64 + rounded)
}

/// Intercept predicted from the last two frames; the mid-court height
/// when the ball moves away.
pub fn pong_oracle_intercept_y(frames: &[Frame]) -> Option<i64> {
    let [.., a, b] = frames else { return None };
    let dx = b.ball.0 - a.ball.0;
    match dx.signum() {
        0 => None,
        -1 => Some(MID_COURT),
        _ => intercept_y(b.ball.0, b.ball.1, dx, b.ball.1 - a.ball.1),
    }
}

/// Ball position and velocity as `seat` sees them.
fn seat_view(state: &PongState, seat: PlayerSeat) -> ((i32, i32), (i32, i32), i32) {
    match seat {
        PlayerSeat::First => (state.ball, state.velocity, state.right_paddle),
        PlayerSeat::Second => {
            ((PLAYER_X + OPPONENT_X - state.ball.0, state.ball.1), (-state.velocity.0, state.velocity.1), state.left_paddle)
        }
    }
}

/// Moves the paddle centre toward `target`, standing still within 4.
pub fn chase(paddle_lower: i32, target: i64) -> PongAction {
    let center = (paddle_lower + PADDLE_HEIGHT / 2) as i64;
    if target > center + 4 {
        PongAction::Up
    } else if target < center - 4 {
        PongAction::Down
    } else {
        PongAction::Stay
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Pong;

impl Game for Pong {
    type State = PongState;
    type Action = PongAction;

    fn id(&self) -> GameId {
        GameId::Pong
    }

    fn initial_state(&self, seed: u64) -> PongState {
        initial(seed)
    }

    fn acting_seats(&self, state: &PongState) -> Vec<PlayerSeat> {
        if state.score.iter().any(|&p| p >= POINTS_TO_WIN) {
            return vec![];
        }
        vec![PlayerSeat::First, PlayerSeat::Second]
    }

    fn legal_actions(&self, _state: &PongState, _seat: PlayerSeat) -> Vec<PongAction> {
        PongAction::ALL.to_vec()
    }

    fn render_state(&self, state: &PongState, seat: PlayerSeat) -> String {
        let frames = pong_observe(state, FRAMES_PER_DECISION);
        match seat {
            PlayerSeat::First => render_frames(&frames),
            PlayerSeat::Second => render_frames(&frames.into_iter().map(mirror).collect::<Vec<_>>()),
        }
    }

    fn truths(&self, state: &PongState, seat: PlayerSeat) -> Vec<Option<Payload>> {
        let ((x, y), (dx, dy), _) = seat_view(state, seat);
        let direction = direction_label(dx, dy).map(|l| Payload::Label(l.to_string()));
        let intercept = if dx > 0 { intercept_y(x, y, dx, dy) } else { Some(MID_COURT) };
        vec![direction, intercept.map(Payload::Int)]
    }

    fn format_action(&self, action: &PongAction) -> String {
        action.label().to_string()
    }

    fn apply(&self, state: &PongState, actions: &[(PlayerSeat, PongAction)]) -> Result<PongState> {
        let pick = |seat| {
            actions
                .iter()
                .find(|(s, _)| *s == seat)
                .map(|(_, a)| *a)
                .ok_or_else(|| ArenaError::IllegalMove(format!("no action for {seat:?}")))
        };
        let (right, left) = (pick(PlayerSeat::First)?, pick(PlayerSeat::Second)?);
        let mut s = state.clone();
        for _ in 0..FRAMES_PER_DECISION {
            s = pong_step(&s, right, left);
            if s.score.iter().any(|&p| p >= POINTS_TO_WIN) {
                break;
            }
        }
        Ok(s)
    }

    fn status(&self, state: &PongState) -> GameStatus {
        let winner = if state.score[0] >= POINTS_TO_WIN {
            Some(PlayerSeat::First)
        } else if state.score[1] >= POINTS_TO_WIN {
            Some(PlayerSeat::Second)
        } else {
            return GameStatus::Ongoing;
        };
        GameStatus::Finished { rewards: win_rewards(winner), reason: TerminationReason::NaturalEnd }
    }

    fn scripted_action(&self, state: &PongState, seat: PlayerSeat, truths: &[Option<Payload>]) -> PongAction {
        let (_, _, paddle) = seat_view(state, seat);
        let target = match truths.get(1) {
            Some(Some(Payload::Int(y))) => *y,
            _ => MID_COURT,
        };
        chase(paddle, target)
    }
}
