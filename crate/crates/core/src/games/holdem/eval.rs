//! Hand evaluation for 5 to 7 cards, computed directly from rank counts
//! and suit masks rather than by enumerating 5-card subsets.

use std::cmp::Ordering;

use super::cards::Card;
use crate::error::{ArenaError, Result};

pub const CATEGORY_NAMES: [&str; 10] = [
    "Royal Flush",
    "Straight Flush",
    "Four of a Kind",
    "Full House",
    "Flush",
    "Straight",
    "Three of a Kind",
    "Two Pair",
    "One Pair",
    "High Card",
];

/// Category 1 (royal flush) to 10 (high card) plus the ranks that break
/// ties within it, most significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HandRank {
    pub category: u8,
    pub tiebreak: [u8; 5],
}

impl HandRank {
    fn new(category: u8, ranks: &[u8]) -> HandRank {
        let mut tiebreak = [0; 5];
        tiebreak[..ranks.len()].copy_from_slice(ranks);
        HandRank { category, tiebreak }
    }

    /// A single integer that orders hands the same way, larger is better.
    pub fn key(&self) -> u32 {
        self.tiebreak.iter().fold(11 - self.category as u32, |acc, &r| acc << 4 | r as u32)
    }
}

impl Ord for HandRank {
    fn cmp(&self, other: &Self) -> Ordering {
        other.category.cmp(&self.category).then(self.tiebreak.cmp(&other.tiebreak))
    }
}

impl PartialOrd for HandRank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Top card of the highest five-rank run in `mask`; the wheel counts as
/// five-high.
fn straight_top(mask: u16) -> Option<u8> {
    (4..13u8).rev().find(|&top| mask >> (top - 4) & 0x1f == 0x1f).or_else(|| {
        const WHEEL: u16 = 1 << 12 | 0xf;
        (mask & WHEEL == WHEEL).then_some(3)
    })
}

fn top_ranks(mask: u16, n: usize) -> Vec<u8> {
    (0..13u8).rev().filter(|r| mask >> r & 1 == 1).take(n).collect()
}

pub fn evaluate(cards: &[Card]) -> Result<HandRank> {
    if !(5..=7).contains(&cards.len()) {
        return Err(ArenaError::Input(format!("need 5 to 7 cards, got {}", cards.len())));
    }
    let mut seen = 0u64;
    for c in cards {
        if c.0 >= 52 || seen >> c.0 & 1 == 1 {
            return Err(ArenaError::Input(format!("duplicate or invalid card {}", c.0)));
        }
        seen |= 1 << c.0;
    }
    Ok(evaluate_unchecked(cards))
}

/// [`evaluate`] without input validation, for hot loops.
pub fn evaluate_unchecked(cards: &[Card]) -> HandRank {
    let mut counts = [0u8; 13];
    let mut suits = [0u16; 4];
    for c in cards {
        counts[c.rank() as usize] += 1;
        suits[c.suit() as usize] |= 1 << c.rank();
    }
    if let Some(&flush) = suits.iter().find(|m| m.count_ones() >= 5) {
        return match straight_top(flush) {
            Some(12) => HandRank::new(1, &[12]),
            Some(top) => HandRank::new(2, &[top]),
            None => HandRank::new(5, &top_ranks(flush, 5)),
        };
    }
    let ranks_mask = suits.iter().fold(0, |a, m| a | m);
    let of_count = |n: u8| -> Vec<u8> { (0..13u8).rev().filter(|&r| counts[r as usize] == n).collect() };
    let (quads, trips, pairs) = (of_count(4), of_count(3), of_count(2));
    let kickers = |exclude: &[u8], n: usize| -> Vec<u8> {
        let mut mask = ranks_mask;
        for r in exclude {
            mask &= !(1 << r);
        }
        top_ranks(mask, n)
    };
    if let Some(&q) = quads.first() {
        return HandRank::new(3, &[&[q][..], &kickers(&[q], 1)].concat());
    }
    if let Some(&t) = trips.first() {
        let pair = trips.get(1).copied().into_iter().chain(pairs.first().copied()).max();
        if let Some(p) = pair {
            return HandRank::new(4, &[t, p]);
        }
    }
    if let Some(top) = straight_top(ranks_mask) {
        return HandRank::new(6, &[top]);
    }
    if let Some(&t) = trips.first() {
        return HandRank::new(7, &[&[t][..], &kickers(&[t], 2)].concat());
    }
    if let [p0, p1, ..] = pairs[..] {
        return HandRank::new(8, &[p0, p1, kickers(&[p0, p1], 1)[0]]);
    }
    if let Some(&p) = pairs.first() {
        return HandRank::new(9, &[&[p][..], &kickers(&[p], 3)].concat());
    }
    HandRank::new(10, &top_ranks(ranks_mask, 5))
}

pub fn category_name(category: u8) -> &'static str {
    CATEGORY_NAMES[(category - 1) as usize]
}
