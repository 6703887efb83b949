//! Heads-up no-limit Hold'em with a five-action betting menu, played as a
//! fixed number of hands between two 100-chip stacks.

pub mod cards;
pub mod eval;
pub mod preflop;

use serde::{Deserialize, Serialize};

pub use cards::Card;
pub use eval::{evaluate, HandRank};
pub use preflop::{hand_class, preflop_table_text, preflop_tenths};

use crate::catalog::GameId;
use crate::engine::record::{PlayerSeat, TerminationReason};
use crate::engine::{Game, GameStatus, GAME_STREAM};
use crate::error::{ArenaError, Result};
use crate::payload::Payload;
use crate::rng::derive_rng;

pub const DEFAULT_HANDS_PER_MATCH: u32 = 8;
pub const STARTING_STACK: i32 = 100;
pub const SMALL_BLIND: i32 = 1;
pub const BIG_BLIND: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    PreFlop,
    Flop,
    Turn,
    River,
}

impl Stage {
    pub fn board_len(self) -> usize {
        match self {
            Stage::PreFlop => 0,
            Stage::Flop => 3,
            Stage::Turn => 4,
            Stage::River => 5,
        }
    }

    fn next(self) -> Option<Stage> {
        match self {
            Stage::PreFlop => Some(Stage::Flop),
            Stage::Flop => Some(Stage::Turn),
            Stage::Turn => Some(Stage::River),
            Stage::River => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HoldemAction {
    Fold,
    CheckCall,
    RaiseHalfPot,
    RaiseFullPot,
    AllIn,
}

impl HoldemAction {
    pub const ALL: [HoldemAction; 5] = [
        HoldemAction::Fold,
        HoldemAction::CheckCall,
        HoldemAction::RaiseHalfPot,
        HoldemAction::RaiseFullPot,
        HoldemAction::AllIn,
    ];

    pub fn label(self) -> &'static str {
        match self {
            HoldemAction::Fold => "Fold",
            HoldemAction::CheckCall => "Check and Call",
            HoldemAction::RaiseHalfPot => "Raise Half Pot",
            HoldemAction::RaiseFullPot => "Raise Full Pot",
            HoldemAction::AllIn => "All in",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoldemState {
    pub hands_per_match: u32,
    pub hand_index: u32,
    /// Chips behind, not yet in the pot.
    pub stacks: [i32; 2],
    /// Chips each seat has put in the current hand's pot.
    pub contrib: [i32; 2],
    pub hole: [[Card; 2]; 2],
    /// All five community cards; only `stage.board_len()` are revealed.
    pub board: [Card; 5],
    pub stage: Stage,
    pub to_act: PlayerSeat,
    pub acted: [bool; 2],
    /// The button posts the small blind and acts first preflop.
    pub button: PlayerSeat,
    pub finished: bool,
    seed: u64,
}

impl HoldemState {
    pub fn new(seed: u64, hands_per_match: u32) -> HoldemState {
        let mut s = HoldemState {
            hands_per_match,
            hand_index: 0,
            stacks: [STARTING_STACK; 2],
            contrib: [0; 2],
            hole: [[Card(0); 2]; 2],
            board: [Card(0); 5],
            stage: Stage::PreFlop,
            to_act: PlayerSeat::First,
            acted: [false; 2],
            button: PlayerSeat::First,
            finished: false,
            seed,
        };
        s.start_hand();
        s
    }

    pub fn pot(&self) -> i32 {
        self.contrib[0] + self.contrib[1]
    }

    pub fn community(&self) -> &[Card] {
        &self.board[..self.stage.board_len()]
    }

    /// Largest contribution either seat can reach this hand.
    fn cap(&self) -> i32 {
        (self.stacks[0] + self.contrib[0]).min(self.stacks[1] + self.contrib[1])
    }

    fn put(&mut self, seat: usize, chips: i32) {
        self.stacks[seat] -= chips;
        self.contrib[seat] += chips;
    }

    fn start_hand(&mut self) {
        if self.hand_index >= self.hands_per_match || self.stacks.contains(&0) {
            self.finished = true;
            return;
        }
        let mut rng = derive_rng(self.seed, &[GAME_STREAM, self.hand_index as u64]);
        let deck = cards::shuffled_deck(&mut rng);
        self.hole = [[deck[0], deck[1]], [deck[2], deck[3]]];
        self.board.copy_from_slice(&deck[4..9]);
        self.button = if self.hand_index % 2 == 0 { PlayerSeat::First } else { PlayerSeat::Second };
        self.stage = Stage::PreFlop;
        self.acted = [false; 2];
        self.to_act = self.button;
        let cap = self.cap();
        let (sb, bb) = (self.button.index(), self.button.other().index());
        self.put(sb, SMALL_BLIND.min(cap));
        self.put(bb, BIG_BLIND.min(cap));
        self.close_round_if_done();
    }

    fn close_round_if_done(&mut self) {
        if self.contrib[0] != self.contrib[1] {
            return;
        }
        let all_in = self.stacks.contains(&0);
        if all_in {
            self.showdown();
        } else if self.acted == [true, true] {
            match self.stage.next() {
                Some(next) => {
                    self.stage = next;
                    self.acted = [false; 2];
                    self.to_act = self.button.other();
                }
                None => self.showdown(),
            }
        }
    }

    fn showdown(&mut self) {
        self.stage = Stage::River;
        let rank = |seat: usize| {
            let seven: Vec<Card> = self.hole[seat].iter().chain(self.board.iter()).copied().collect();
            eval::evaluate_unchecked(&seven)
        };
        let (a, b) = (rank(0), rank(1));
        let pot = self.pot();
        let payout = match a.cmp(&b) {
            std::cmp::Ordering::Greater => [pot, 0],
            std::cmp::Ordering::Less => [0, pot],
            std::cmp::Ordering::Equal => self.contrib,
        };
        self.end_hand(payout);
    }

    fn end_hand(&mut self, payout: [i32; 2]) {
        self.stacks[0] += payout[0];
        self.stacks[1] += payout[1];
        self.contrib = [0; 2];
        self.hand_index += 1;
        self.start_hand();
    }

    /// Chips each seat would hold if the current hand were abandoned.
    pub fn refunded_stacks(&self) -> [i32; 2] {
        [self.stacks[0] + self.contrib[0], self.stacks[1] + self.contrib[1]]
    }
}

pub fn holdem_step(state: &HoldemState, seat: PlayerSeat, action: HoldemAction) -> Result<HoldemState> {
    if state.finished {
        return Err(ArenaError::IllegalMove("the match is over".into()));
    }
    if seat != state.to_act {
        return Err(ArenaError::IllegalMove(format!("{seat:?} acted out of turn")));
    }
    let mut s = state.clone();
    let (me, opp) = (seat.index(), seat.other().index());
    let to_call = s.contrib[opp] - s.contrib[me];
    let pot = s.pot();
    let room = s.cap() - s.contrib[me];
    let chips = match action {
        HoldemAction::Fold => {
            let mut payout = [0; 2];
            payout[opp] = pot;
            s.end_hand(payout);
            return Ok(s);
        }
        HoldemAction::CheckCall => to_call,
        HoldemAction::RaiseHalfPot => to_call + (pot / 2).max(1),
        HoldemAction::RaiseFullPot => to_call + pot,
        HoldemAction::AllIn => room,
    };
    s.put(me, chips.min(room));
    s.acted[me] = true;
    s.to_act = seat.other();
    s.close_round_if_done();
    Ok(s)
}

/// Hand category 1..10 of hole cards plus the revealed board.
pub fn holdem_oracle_rank(hole: &[Card; 2], community: &[Card]) -> Result<u8> {
    let cards: Vec<Card> = hole.iter().chain(community).copied().collect();
    Ok(evaluate(&cards)?.category)
}

pub fn render(state: &HoldemState, seat: PlayerSeat) -> String {
    let (me, opp) = (seat.index(), seat.other().index());
    format!(
        "Hand {} of {}. Your remaining chips: {}. Your opponent's remaining chips: {}.\nYour two private cards: {}\nThe revealed community cards: {}\nYour chips in the pot: {}\nYour opponent's chips in the pot: {}\n",
        state.hand_index + 1,
        state.hands_per_match,
        state.stacks[me],
        state.stacks[opp],
        cards::card_list(&state.hole[me]),
        cards::card_list(state.community()),
        state.contrib[me],
        state.contrib[opp],
    )
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Holdem;

impl Game for Holdem {
    type State = HoldemState;
    type Action = HoldemAction;

    fn id(&self) -> GameId {
        GameId::TexasHoldem
    }

    fn initial_state(&self, seed: u64) -> HoldemState {
        HoldemState::new(seed, DEFAULT_HANDS_PER_MATCH)
    }

    fn acting_seats(&self, state: &HoldemState) -> Vec<PlayerSeat> {
        if state.finished {
            vec![]
        } else {
            vec![state.to_act]
        }
    }

    fn legal_actions(&self, _state: &HoldemState, _seat: PlayerSeat) -> Vec<HoldemAction> {
        HoldemAction::ALL.to_vec()
    }

    fn render_state(&self, state: &HoldemState, seat: PlayerSeat) -> String {
        render(state, seat)
    }

    fn truths(&self, state: &HoldemState, seat: PlayerSeat) -> Vec<Option<Payload>> {
        let hole = &state.hole[seat.index()];
        if state.stage == Stage::PreFlop {
            vec![Some(Payload::Tenths(preflop_tenths(hole[0], hole[1]))), None]
        } else {
            let category = holdem_oracle_rank(hole, state.community()).expect("dealt cards are distinct");
            vec![None, Some(Payload::Int(category as i64))]
        }
    }

    fn format_action(&self, action: &HoldemAction) -> String {
        action.label().to_string()
    }

    fn apply(&self, state: &HoldemState, actions: &[(PlayerSeat, HoldemAction)]) -> Result<HoldemState> {
        match actions {
            [(seat, action)] => holdem_step(state, *seat, *action),
            _ => Err(ArenaError::IllegalMove("one action per turn".into())),
        }
    }

    fn status(&self, state: &HoldemState) -> GameStatus {
        if !state.finished {
            return GameStatus::Ongoing;
        }
        GameStatus::Finished {
            rewards: state.stacks.map(|s| (s - STARTING_STACK) as f64),
            reason: TerminationReason::NaturalEnd,
        }
    }

    fn reward_cap(&self) -> f64 {
        STARTING_STACK as f64
    }

    fn turn_limit_rewards(&self, state: &HoldemState) -> [f64; 2] {
        state.refunded_stacks().map(|s| (s - STARTING_STACK) as f64)
    }

    /// Raise with a preflop win chance above 57% or a made hand of two
    /// pair or better; give up a high-card hand without a jack or better
    /// when facing a bet; otherwise check or call.
    fn scripted_action(&self, state: &HoldemState, seat: PlayerSeat, truths: &[Option<Payload>]) -> HoldemAction {
        let (me, opp) = (seat.index(), seat.other().index());
        match truths {
            [Some(Payload::Tenths(p)), ..] if *p > 570 => HoldemAction::RaiseHalfPot,
            [_, Some(Payload::Int(rank))] if *rank <= 8 => HoldemAction::RaiseHalfPot,
            [_, Some(Payload::Int(10))]
                if state.hole[me].iter().all(|c| c.rank() < 9) && state.contrib[opp] > state.contrib[me] =>
            {
                HoldemAction::Fold
            }
            _ => HoldemAction::CheckCall,
        }
    }
}
