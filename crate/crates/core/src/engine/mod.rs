//! The game contract, the match loop and replay.

pub mod record;
pub mod tournament;

use rand::seq::SliceRandom;

use crate::agents::{Agent, AgentRequest, OracleHints};
use crate::catalog::GameId;
use crate::error::{ArenaError, Result};
use crate::payload::{Payload, SubproblemTruth};
use crate::protocol::{render_prompt, Extracted, ParseMode, ParsedResponse};
use crate::rng::{derive_rng, derive_seed};
use record::{InvalidActionPolicy, MatchConfig, MatchRecord, PlayerSeat, TerminationReason, TurnRecord};

/// Stream labels under a match seed. Games use labels of their own
/// starting at [`GAME_STREAM`].
const AGENT_STREAM: u64 = 1;
const FALLBACK_STREAM: u64 = 2;
pub const GAME_STREAM: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GameStatus {
    Ongoing,
    Finished { rewards: [f64; 2], reason: TerminationReason },
}

/// Rules, rendering and oracles for one game. States are immutable
/// values; every source of randomness is carried inside the state as a
/// seed so that `apply` stays a pure function.
pub trait Game: Send + Sync {
    type State: Clone + std::fmt::Debug + Send + Sync;
    type Action: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn id(&self) -> GameId;

    fn initial_state(&self, seed: u64) -> Self::State;

    /// Seats that must act on this state: one for turn-based games, both
    /// for simultaneous ones. Empty once the game is over.
    fn acting_seats(&self, state: &Self::State) -> Vec<PlayerSeat>;

    fn legal_actions(&self, state: &Self::State, seat: PlayerSeat) -> Vec<Self::Action>;

    /// The state as `seat` sees it, in the prompt's input layout.
    fn render_state(&self, state: &Self::State, seat: PlayerSeat) -> String;

    /// Oracle answers for every declared subproblem, in index order.
    /// `None` marks a subproblem with no defined answer on this state.
    fn truths(&self, state: &Self::State, seat: PlayerSeat) -> Vec<Option<Payload>>;

    /// Fills in answers that depend on the action the seat submits.
    fn truths_after_action(
        &self,
        _state: &Self::State,
        _seat: PlayerSeat,
        _action: &Self::Action,
        _truths: &mut [Option<Payload>],
    ) {
    }

    /// Rewrites an extracted intermediate answer into the form the oracle
    /// uses, where the game accepts abbreviations.
    fn canonicalize_intermediate(&self, _state: &Self::State, _seat: PlayerSeat, _index: usize, _value: &mut Payload) {}

    /// Canonical text of an action, as [`crate::protocol::extract_action`]
    /// produces it.
    fn format_action(&self, action: &Self::Action) -> String;

    /// Maps extracted action text to a legal action, if it is one.
    fn resolve_action(&self, state: &Self::State, seat: PlayerSeat, text: &str) -> Option<Self::Action> {
        self.legal_actions(state, seat).into_iter().find(|a| self.format_action(a) == text)
    }

    /// Advances the state. `actions` holds one entry per acting seat.
    fn apply(&self, state: &Self::State, actions: &[(PlayerSeat, Self::Action)]) -> Result<Self::State>;

    fn status(&self, state: &Self::State) -> GameStatus;

    /// T_j, the largest reward one seat can collect in a match.
    fn reward_cap(&self) -> f64 {
        1.0
    }

    /// Rewards when the turn cap cuts the match short.
    fn turn_limit_rewards(&self, _state: &Self::State) -> [f64; 2] {
        [0.0, 0.0]
    }

    /// The fixed policy of the scripted agent, given this turn's truths.
    fn scripted_action(&self, state: &Self::State, seat: PlayerSeat, truths: &[Option<Payload>]) -> Self::Action;

    /// The action that accepts a standing offer, where the game has one.
    fn accept_action(&self, _state: &Self::State, _seat: PlayerSeat) -> Option<Self::Action> {
        None
    }
}

/// Calls `$body` with `$g` bound to the concrete game for `$id`.
#[macro_export]
macro_rules! with_game {
    ($id:expr, |$g:ident| $body:expr) => {{
        use $crate::catalog::GameId as __Id;
        match $id {
            __Id::Othello => {
                let $g = &$crate::games::Othello;
                $body
            }
            __Id::Pong => {
                let $g = &$crate::games::Pong;
                $body
            }
            __Id::Surround => {
                let $g = &$crate::games::Surround;
                $body
            }
            __Id::Checkers => {
                let $g = &$crate::games::Checkers;
                $body
            }
            __Id::TicTacToe => {
                let $g = &$crate::games::LineGame::TIC_TAC_TOE;
                $body
            }
            __Id::Connect4 => {
                let $g = &$crate::games::LineGame::CONNECT4;
                $body
            }
            __Id::TexasHoldem => {
                let $g = &$crate::games::Holdem;
                $body
            }
            __Id::Negotiation => {
                let $g = &$crate::games::Negotiation;
                $body
            }
        }
    }};
}

/// Runs one match. `agent_a` takes seat First, `agent_b` seat Second.
pub fn run_match(config: &MatchConfig, agent_a: &dyn Agent, agent_b: &dyn Agent) -> Result<MatchRecord> {
    if config.max_turns == 0 {
        return Err(ArenaError::Config("max_turns must be at least 1".into()));
    }
    with_game!(config.game_id, |g| run_with(g, config, [agent_a, agent_b]))
}

struct Decision<A> {
    record: TurnRecord,
    action: Option<A>,
}

fn truth_list(truths: &[Option<Payload>]) -> Vec<SubproblemTruth> {
    truths
        .iter()
        .enumerate()
        .map(|(i, value)| SubproblemTruth { subproblem: i + 1, value: value.clone() })
        .collect()
}

fn decide<G: Game>(
    game: &G,
    config: &MatchConfig,
    state: &G::State,
    step: usize,
    seat: PlayerSeat,
    agent: &dyn Agent,
) -> Result<Decision<G::Action>> {
    let id = game.id();
    let mode = ParseMode::from_strict(config.strict_parse);
    let legal = game.legal_actions(state, seat);
    if legal.is_empty() {
        return Err(ArenaError::IllegalMove(format!("{id}: no legal action at step {step}")));
    }
    let state_text = game.render_state(state, seat);
    let prompt_text = render_prompt(id, config.prompt_variant, &state_text)?;
    let mut truths = game.truths(state, seat);
    debug_assert_eq!(truths.len(), id.subproblems().len());
    let policy = game.scripted_action(state, seat, &truths);
    let mut hinted = truths.clone();
    game.truths_after_action(state, seat, &policy, &mut hinted);

    let mut request = AgentRequest {
        game: id,
        seat,
        prompt: prompt_text.clone(),
        state_text: state_text.clone(),
        legal_actions: legal.iter().map(|a| game.format_action(a)).collect(),
        accept_action: game.accept_action(state, seat).map(|a| game.format_action(&a)),
        hints: OracleHints { truths: truth_list(&hinted), policy_action: game.format_action(&policy) },
        seed: 0,
        attempt: 0,
    };

    let mut raw_reply = String::new();
    let mut parsed = None;
    let mut chosen = None;
    for attempt in 0..=config.parse_retries {
        request.attempt = attempt;
        request.seed = derive_seed(config.seed, &[AGENT_STREAM, step as u64, seat.index() as u64, attempt as u64]);
        match agent.reply(&request) {
            Ok(text) => {
                let p = ParsedResponse::parse(&text, id, mode);
                let resolved = p.action.value().and_then(|a| game.resolve_action(state, seat, a));
                raw_reply = text;
                parsed = Some(p);
                if resolved.is_some() {
                    chosen = resolved;
                    break;
                }
            }
            Err(err) => {
                raw_reply = format!("<agent error: {err}>");
                parsed = None;
            }
        }
    }
    let mut parsed = parsed.unwrap_or_else(|| ParsedResponse::parse("", id, mode));
    for (index, value) in parsed.intermediates.iter_mut() {
        if let Extracted::Value(v) = value {
            game.canonicalize_intermediate(state, seat, *index, v);
        }
    }
    if chosen.is_none() {
        if let Extracted::Value(text) = &parsed.action {
            parsed.action = Extracted::ParseFailure(format!("'{text}' is not a legal action"));
        }
    }

    let mut fallback = false;
    if chosen.is_none() && config.invalid_action_policy == InvalidActionPolicy::RandomFallback {
        let mut rng = derive_rng(config.seed, &[FALLBACK_STREAM, step as u64, seat.index() as u64]);
        chosen = legal.choose(&mut rng).cloned();
        fallback = true;
    }
    if let Some(action) = chosen.as_ref().filter(|_| !fallback) {
        game.truths_after_action(state, seat, action, &mut truths);
    }

    Ok(Decision {
        record: TurnRecord {
            turn_index: step,
            seat,
            state_text,
            prompt_text,
            raw_reply,
            parsed,
            truths: truth_list(&truths),
            action_taken: chosen.as_ref().map(|a| game.format_action(a)),
            action_was_fallback: fallback,
        },
        action: chosen,
    })
}

fn run_with<G: Game>(game: &G, config: &MatchConfig, agents: [&dyn Agent; 2]) -> Result<MatchRecord> {
    let cap = game.reward_cap();
    let mut state = game.initial_state(config.seed);
    let mut turns = Vec::new();
    let mut step = 0usize;
    let finish = |turns, rewards: [f64; 2], reason| MatchRecord {
        config: config.clone(),
        agent_ids: [agents[0].id().to_string(), agents[1].id().to_string()],
        turns,
        reward_first: rewards[0],
        reward_second: rewards[1],
        reward_cap: cap,
        termination_reason: reason,
    };
    loop {
        if let GameStatus::Finished { rewards, reason } = game.status(&state) {
            return Ok(finish(turns, rewards, reason));
        }
        if step >= config.max_turns as usize {
            return Ok(finish(turns, game.turn_limit_rewards(&state), TerminationReason::TurnLimit));
        }
        let mut actions = Vec::new();
        let mut forfeited = Vec::new();
        for seat in game.acting_seats(&state) {
            let decision = decide(game, config, &state, step, seat, agents[seat.index()])?;
            turns.push(decision.record);
            match decision.action {
                Some(action) => actions.push((seat, action)),
                None => forfeited.push(seat),
            }
        }
        if !forfeited.is_empty() {
            let mut rewards = [0.0; 2];
            if forfeited.len() == 1 {
                rewards[forfeited[0].index()] = -cap;
                rewards[forfeited[0].other().index()] = cap;
            }
            return Ok(finish(turns, rewards, TerminationReason::Forfeit));
        }
        state = game.apply(&state, &actions)?;
        step += 1;
    }
}

/// Re-simulates a match from its seed and logged actions, checking every
/// logged state text byte for byte. Returns the number of turns checked.
pub fn replay_match(record: &MatchRecord) -> Result<usize> {
    with_game!(record.config.game_id, |g| replay_with(g, record))
}

fn replay_with<G: Game>(game: &G, record: &MatchRecord) -> Result<usize> {
    let mut state = game.initial_state(record.config.seed);
    let mut turns = record.turns.iter().peekable();
    let mut checked = 0;
    while turns.peek().is_some() {
        let mut actions = Vec::new();
        for seat in game.acting_seats(&state) {
            let turn = turns.next().ok_or_else(|| ArenaError::ReplayMismatch {
                turn: checked,
                detail: "log ends in the middle of a step".into(),
            })?;
            let mismatch = |detail: String| ArenaError::ReplayMismatch { turn: turn.turn_index, detail };
            if turn.seat != seat {
                return Err(mismatch(format!("expected seat {seat:?}, log has {:?}", turn.seat)));
            }
            let expected = game.render_state(&state, seat);
            if expected != turn.state_text {
                return Err(mismatch("state text differs".into()));
            }
            checked += 1;
            match &turn.action_taken {
                Some(text) => {
                    let action = game
                        .resolve_action(&state, seat, text)
                        .ok_or_else(|| mismatch(format!("logged action '{text}' is not legal")))?;
                    actions.push((seat, action));
                }
                None => {
                    // A forfeit ends the match after this step.
                    if turns.peek().is_some() && actions.is_empty() && game.acting_seats(&state).len() == 1 {
                        return Err(mismatch("turns continue after a forfeit".into()));
                    }
                }
            }
        }
        if actions.len() == game.acting_seats(&state).len() {
            state = game.apply(&state, &actions)?;
        }
    }
    if record.termination_reason != TerminationReason::Forfeit
        && record.termination_reason != TerminationReason::TurnLimit
    {
        match game.status(&state) {
            GameStatus::Finished { rewards, .. } if rewards == [record.reward_first, record.reward_second] => {}
            other => {
                return Err(ArenaError::ReplayMismatch {
                    turn: checked,
                    detail: format!("final status {other:?} disagrees with the logged rewards"),
                })
            }
        }
    }
    Ok(checked)
}
