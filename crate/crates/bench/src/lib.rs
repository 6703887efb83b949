//! Fixtures shared by the benchmarks: positions reached by random play.

use arena_core::engine::{Game, GameStatus};
use arena_core::games::holdem::cards::deck;
use arena_core::games::holdem::Card;
use arena_core::derive_rng;
use rand::seq::SliceRandom;

/// Up to `count` non-terminal states visited by uniformly random play,
/// restarting from a fresh seed whenever a game ends.
pub fn random_states<G: Game>(game: &G, seed: u64, count: usize) -> Vec<G::State> {
    let mut rng = derive_rng(seed, &[0xbe7c]);
    let mut out = Vec::with_capacity(count);
    let mut match_seed = seed;
    let mut state = game.initial_state(match_seed);
    while out.len() < count {
        if !matches!(game.status(&state), GameStatus::Ongoing) {
            match_seed += 1;
            state = game.initial_state(match_seed);
            continue;
        }
        out.push(state.clone());
        let actions: Vec<_> = game
            .acting_seats(&state)
            .into_iter()
            .map(|seat| (seat, game.legal_actions(&state, seat).choose(&mut rng).cloned().expect("a legal action")))
            .collect();
        state = game.apply(&state, &actions).expect("legal action applies");
    }
    out
}

/// Random seven-card hands.
pub fn seven_card_hands(seed: u64, count: usize) -> Vec<[Card; 7]> {
    let mut rng = derive_rng(seed, &[0xca7d]);
    let mut cards = deck();
    (0..count)
        .map(|_| {
            cards.shuffle(&mut rng);
            cards[..7].try_into().unwrap()
        })
        .collect()
}
