//! Alternating-offer division of a three-item pool. Each player values the
//! whole pool at 30; after round 8 every further round has a 20% chance
//! of ending the game with nothing for either side.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::GameId;
use crate::engine::record::{PlayerSeat, TerminationReason};
use crate::engine::{Game, GameStatus, GAME_STREAM};
use crate::error::{ArenaError, Result};
use crate::payload::Payload;
use crate::rng::derive_rng;

pub const POOL_VALUE: u32 = 30;
pub const SAFE_ROUNDS: u32 = 8;
pub const END_PROBABILITY: f64 = 0.2;
const ACCEPT_THRESHOLD: u32 = 15;
const PROPOSE_THRESHOLD: u32 = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Proposal {
    pub p1: [u8; 3],
    pub p2: [u8; 3],
}

impl Proposal {
    pub fn share(&self, seat: PlayerSeat) -> [u8; 3] {
        match seat {
            PlayerSeat::First => self.p1,
            PlayerSeat::Second => self.p2,
        }
    }

    pub fn is_valid_for(&self, counts: [u8; 3]) -> bool {
        (0..3).all(|i| self.p1[i] as u32 + self.p2[i] as u32 == counts[i] as u32)
    }

    pub fn text(&self) -> String {
        let [a, b, c] = self.p1;
        let [d, e, f] = self.p2;
        format!("[P1: ({a},{b},{c}), P2: ({d},{e},{f})]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NegotiationAction {
    Agree,
    Propose(Proposal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegotiationEnd {
    Agreed(Proposal),
    /// The random stop fired before this round.
    Stopped(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegotiationState {
    pub counts: [u8; 3],
    pub values: [[u8; 3]; 2],
    /// The round about to be played, from 1. Odd rounds belong to the
    /// first seat.
    pub round: u32,
    pub history: Vec<(PlayerSeat, Proposal)>,
    pub end: Option<NegotiationEnd>,
    seed: u64,
}

impl NegotiationState {
    pub fn to_move(&self) -> PlayerSeat {
        if self.round % 2 == 1 {
            PlayerSeat::First
        } else {
            PlayerSeat::Second
        }
    }

    /// The latest proposal, which the side to move may accept.
    pub fn standing(&self) -> Option<Proposal> {
        self.history.last().map(|(_, p)| *p)
    }
}

/// Every non-negative `v` with `counts . v == total`.
pub fn valuation_solutions(counts: [u8; 3], total: u32) -> Vec<[u8; 3]> {
    let [a, b, c] = counts.map(|n| n as u32);
    let mut out = Vec::new();
    for x in 0..=total / a {
        for y in 0..=(total - a * x) / b {
            let rest = total - a * x - b * y;
            if rest % c == 0 {
                out.push([x as u8, y as u8, (rest / c) as u8]);
            }
        }
    }
    out
}

/// Counts uniform in 1..=5, each player's valuation uniform over the
/// solutions for those counts. Counts with no solution are redrawn.
pub fn generate_pool<R: Rng>(rng: &mut R) -> ([u8; 3], [[u8; 3]; 2]) {
    loop {
        let counts = [0; 3].map(|_: u8| rng.gen_range(1..=5u8));
        let solutions = valuation_solutions(counts, POOL_VALUE);
        if let (Some(a), Some(b)) = (solutions.choose(rng), solutions.choose(rng)) {
            return (counts, [*a, *b]);
        }
    }
}

pub fn initial(seed: u64) -> NegotiationState {
    let mut rng = derive_rng(seed, &[GAME_STREAM]);
    let (counts, values) = generate_pool(&mut rng);
    NegotiationState { counts, values, round: 1, history: vec![], end: None, seed }
}

/// The viewer's value for its share of a proposal.
pub fn negotiation_oracle_value(proposal: &Proposal, values: [u8; 3], seat: PlayerSeat) -> u32 {
    proposal.share(seat).iter().zip(values).map(|(&n, v)| n as u32 * v as u32).sum()
}

pub fn all_proposals(counts: [u8; 3]) -> Vec<Proposal> {
    let mut out = Vec::new();
    for x in 0..=counts[0] {
        for y in 0..=counts[1] {
            for z in 0..=counts[2] {
                out.push(Proposal { p1: [x, y, z], p2: [counts[0] - x, counts[1] - y, counts[2] - z] });
            }
        }
    }
    out
}

pub fn negotiation_step(state: &NegotiationState, action: &NegotiationAction) -> Result<NegotiationState> {
    if state.end.is_some() {
        return Err(ArenaError::IllegalMove("the negotiation is over".into()));
    }
    let mut s = state.clone();
    match action {
        NegotiationAction::Agree => {
            let p = s.standing().ok_or_else(|| ArenaError::IllegalMove("no proposal to agree to".into()))?;
            s.end = Some(NegotiationEnd::Agreed(p));
        }
        NegotiationAction::Propose(p) => {
            if !p.is_valid_for(s.counts) {
                return Err(ArenaError::IllegalMove(format!("{} does not divide the pool {:?}", p.text(), s.counts)));
            }
            s.history.push((s.to_move(), *p));
            s.round += 1;
            if s.round > SAFE_ROUNDS {
                let mut rng = derive_rng(s.seed, &[GAME_STREAM + 1, s.round as u64]);
                if rng.gen_bool(END_PROBABILITY) {
                    s.end = Some(NegotiationEnd::Stopped(s.round));
                }
            }
        }
    }
    Ok(s)
}

fn player_name(seat: PlayerSeat) -> &'static str {
    match seat {
        PlayerSeat::First => "Player 1",
        PlayerSeat::Second => "Player 2",
    }
}

pub fn render(state: &NegotiationState, seat: PlayerSeat) -> String {
    let list = |v: [u8; 3]| format!("[{}, {}, {}]", v[0], v[1], v[2]);
    let mut out = format!(
        "You are {}.\nCurrent round: {}\nPool: {}\nYour values of the items: {}\nNegotiation history:\n",
        player_name(seat),
        state.round,
        list(state.counts),
        list(state.values[seat.index()]),
    );
    if state.history.is_empty() {
        out.push_str("None\n");
    }
    for (i, (by, p)) in state.history.iter().enumerate() {
        out.push_str(&format!("Round {}: {} proposed {}\n", i + 1, player_name(*by), p.text()));
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Negotiation;

impl Negotiation {
    /// Accept anything worth at least 15; otherwise propose the division
    /// worth at least 18 to us that leaves the opponent the most items.
    pub fn policy(&self, state: &NegotiationState, seat: PlayerSeat) -> NegotiationAction {
        let values = state.values[seat.index()];
        if let Some(p) = state.standing() {
            if negotiation_oracle_value(&p, values, seat) >= ACCEPT_THRESHOLD {
                return NegotiationAction::Agree;
            }
        }
        let best = all_proposals(state.counts)
            .into_iter()
            .filter(|p| negotiation_oracle_value(p, values, seat) >= PROPOSE_THRESHOLD)
            .max_by_key(|p| {
                let given: u32 = p.share(seat.other()).iter().map(|&n| n as u32).sum();
                (given, std::cmp::Reverse(negotiation_oracle_value(p, values, seat)))
            })
            .expect("taking the whole pool is worth 30");
        NegotiationAction::Propose(best)
    }
}

impl Game for Negotiation {
    type State = NegotiationState;
    type Action = NegotiationAction;

    fn id(&self) -> GameId {
        GameId::Negotiation
    }

    fn initial_state(&self, seed: u64) -> NegotiationState {
        initial(seed)
    }

    fn acting_seats(&self, state: &NegotiationState) -> Vec<PlayerSeat> {
        if state.end.is_some() {
            vec![]
        } else {
            vec![state.to_move()]
        }
    }

    fn legal_actions(&self, state: &NegotiationState, _seat: PlayerSeat) -> Vec<NegotiationAction> {
        let mut out: Vec<NegotiationAction> =
            all_proposals(state.counts).into_iter().map(NegotiationAction::Propose).collect();
        if state.standing().is_some() {
            out.push(NegotiationAction::Agree);
        }
        out
    }

    fn render_state(&self, state: &NegotiationState, seat: PlayerSeat) -> String {
        render(state, seat)
    }

    fn truths(&self, state: &NegotiationState, seat: PlayerSeat) -> Vec<Option<Payload>> {
        let standing = state
            .standing()
            .map(|p| Payload::Int(negotiation_oracle_value(&p, state.values[seat.index()], seat) as i64));
        vec![standing, None]
    }

    fn truths_after_action(
        &self,
        state: &NegotiationState,
        seat: PlayerSeat,
        action: &NegotiationAction,
        truths: &mut [Option<Payload>],
    ) {
        if let (NegotiationAction::Propose(p), Some(slot)) = (action, truths.get_mut(1)) {
            *slot = Some(Payload::Int(negotiation_oracle_value(p, state.values[seat.index()], seat) as i64));
        }
    }

    fn format_action(&self, action: &NegotiationAction) -> String {
        match action {
            NegotiationAction::Agree => "[Agree]".to_string(),
            NegotiationAction::Propose(p) => p.text(),
        }
    }

    fn apply(&self, state: &NegotiationState, actions: &[(PlayerSeat, NegotiationAction)]) -> Result<NegotiationState> {
        match actions {
            [(seat, action)] if *seat == state.to_move() => negotiation_step(state, action),
            _ => Err(ArenaError::IllegalMove("expected one action from the seat to move".into())),
        }
    }

    fn status(&self, state: &NegotiationState) -> GameStatus {
        match state.end {
            None => GameStatus::Ongoing,
            Some(NegotiationEnd::Stopped(_)) => {
                GameStatus::Finished { rewards: [0.0, 0.0], reason: TerminationReason::NaturalEnd }
            }
            Some(NegotiationEnd::Agreed(p)) => {
                let reward = |seat: PlayerSeat| negotiation_oracle_value(&p, state.values[seat.index()], seat) as f64;
                GameStatus::Finished {
                    rewards: [reward(PlayerSeat::First), reward(PlayerSeat::Second)],
                    reason: TerminationReason::NaturalEnd,
                }
            }
        }
    }

    fn reward_cap(&self) -> f64 {
        POOL_VALUE as f64
    }

    fn scripted_action(&self, state: &NegotiationState, seat: PlayerSeat, _truths: &[Option<Payload>]) -> NegotiationAction {
        self.policy(state, seat)
    }

    fn accept_action(&self, state: &NegotiationState, _seat: PlayerSeat) -> Option<NegotiationAction> {
        state.standing().map(|_| NegotiationAction::Agree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(counts: [u8; 3], values: [[u8; 3]; 2]) -> NegotiationState {
        NegotiationState { counts, values, round: 1, history: vec![], end: None, seed: 9 }
    }

    #[test]
    fn reference_value() {
        let p = Proposal { p1: [3, 3, 2], p2: [2, 1, 1] };
        assert_eq!(negotiation_oracle_value(&p, [2, 5, 0], PlayerSeat::Second), 9);
        let nothing = Proposal { p1: [5, 4, 3], p2: [0, 0, 0] };
        assert_eq!(negotiation_oracle_value(&nothing, [2, 5, 0], PlayerSeat::Second), 0);
    }

    #[test]
    fn agreement_pays_both_sides() {
        let s = state([5, 4, 3], [[2, 3, 4], [2, 5, 0]]);
        let p = Proposal { p1: [3, 3, 2], p2: [2, 1, 1] };
        let s = negotiation_step(&s, &NegotiationAction::Propose(p)).unwrap();
        assert_eq!(s.to_move(), PlayerSeat::Second);
        let s = negotiation_step(&s, &NegotiationAction::Agree).unwrap();
        match Negotiation.status(&s) {
            GameStatus::Finished { rewards, .. } => assert_eq!(rewards, [23.0, 9.0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_division_is_rejected() {
        let s = state([5, 4, 3], [[2, 3, 4], [2, 5, 0]]);
        let bad = Proposal { p1: [4, 0, 0], p2: [2, 1, 1] };
        assert!(negotiation_step(&s, &NegotiationAction::Propose(bad)).is_err());
        assert!(negotiation_step(&s, &NegotiationAction::Agree).is_err());
    }

    #[test]
    fn no_random_stop_in_the_first_eight_rounds() {
        for seed in 0..200 {
            let mut s = initial(seed);
            let p = all_proposals(s.counts)[0];
            while s.end.is_none() && s.round <= 40 {
                s = negotiation_step(&s, &NegotiationAction::Propose(p)).unwrap();
            }
            match s.end {
                Some(NegotiationEnd::Stopped(r)) => assert!(r > SAFE_ROUNDS),
                other => panic!("seed {seed}: {other:?}"),
            }
        }
    }

    #[test]
    fn pools_respect_the_value_constraint() {
        let mut rng = derive_rng(1, &[]);
        for _ in 0..2000 {
            let (counts, values) = generate_pool(&mut rng);
            assert!(counts.iter().all(|n| (1..=5).contains(n)));
            for v in values {
                let total: u32 = counts.iter().zip(v).map(|(&n, v)| n as u32 * v as u32).sum();
                assert_eq!(total, POOL_VALUE);
            }
        }
    }

    #[test]
    fn four_four_four_has_no_valuation() {
        assert!(valuation_solutions([4, 4, 4], 30).is_empty());
        assert!(valuation_solutions([1, 1, 1], 30).len() == 496);
    }

    #[test]
    fn second_subproblem_follows_the_submitted_proposal() {
        let s = state([5, 4, 3], [[2, 3, 4], [2, 5, 0]]);
        let mut truths = Negotiation.truths(&s, PlayerSeat::First);
        assert_eq!(truths, vec![None, None]);
        let p = Proposal { p1: [3, 3, 2], p2: [2, 1, 1] };
        Negotiation.truths_after_action(&s, PlayerSeat::First, &NegotiationAction::Propose(p), &mut truths);
        assert_eq!(truths[1], Some(Payload::Int(23)));
    }

    #[test]
    fn scripted_policy_thresholds() {
        let s = state([5, 4, 3], [[2, 3, 4], [2, 5, 0]]);
        match Negotiation.policy(&s, PlayerSeat::First) {
            NegotiationAction::Propose(p) => {
                assert!(negotiation_oracle_value(&p, [2, 3, 4], PlayerSeat::First) >= 18)
            }
            NegotiationAction::Agree => panic!("nothing to agree to"),
        }
        let generous = Proposal { p1: [0, 0, 0], p2: [5, 4, 3] };
        let s = negotiation_step(&s, &NegotiationAction::Propose(generous)).unwrap();
        assert_eq!(Negotiation.policy(&s, PlayerSeat::Second), NegotiationAction::Agree);
    }
}
