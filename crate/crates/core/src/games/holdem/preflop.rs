//! Heads-up preflop win probabilities for the 169 starting-hand classes.
//! The values live in `preflop_table.txt`, produced by the `gen_preflop`
//! example.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use super::cards::{Card, RANK_CHARS};

const TABLE_DATA: &str = include_str!("preflop_table.txt");

/// All 169 classes: pairs from AA down, then suited, then offsuit hands,
/// each by high card then low card.
pub fn hand_classes() -> Vec<String> {
    let mut out: Vec<String> = (0..13).rev().map(|r| format!("{0}{0}", RANK_CHARS[r])).collect();
    for suffix in ['s', 'o'] {
        for hi in (0..13).rev() {
            for lo in (0..hi).rev() {
                out.push(format!("{}{}{suffix}", RANK_CHARS[hi], RANK_CHARS[lo]));
            }
        }
    }
    out
}

/// `AA`, `AKs`, `43s`, `Q4o`.
pub fn hand_class(a: Card, b: Card) -> String {
    let (hi, lo) = if a.rank() >= b.rank() { (a, b) } else { (b, a) };
    let (h, l) = (RANK_CHARS[hi.rank() as usize], RANK_CHARS[lo.rank() as usize]);
    if hi.rank() == lo.rank() {
        format!("{h}{l}")
    } else if hi.suit() == lo.suit() {
        format!("{h}{l}s")
    } else {
        format!("{h}{l}o")
    }
}

/// A pair of concrete cards belonging to `class`.
pub fn representative(class: &str) -> Option<(Card, Card)> {
    let chars: Vec<char> = class.chars().collect();
    let rank = |ch: char| RANK_CHARS.iter().position(|&r| r == ch).map(|r| r as u8);
    let (hi, lo) = (rank(*chars.first()?)?, rank(*chars.get(1)?)?);
    match chars.get(2) {
        None if hi == lo => Some((Card::new(hi, 0), Card::new(lo, 1))),
        Some('s') if hi != lo => Some((Card::new(hi, 0), Card::new(lo, 0))),
        Some('o') if hi != lo => Some((Card::new(hi, 0), Card::new(lo, 1))),
        _ => None,
    }
}

static TABLE: LazyLock<BTreeMap<String, i64>> = LazyLock::new(|| {
    TABLE_DATA
        .lines()
        .filter_map(|line| {
            let (class, value) = line.split_once(char::is_whitespace)?;
            let (whole, tenth) = value.trim().split_once('.')?;
            Some((class.to_string(), whole.parse::<i64>().ok()? * 10 + tenth.parse::<i64>().ok()?))
        })
        .collect()
});

/// Win probability in tenths of a percent for a class.
pub fn class_tenths(class: &str) -> Option<i64> {
    TABLE.get(class).copied()
}

pub fn preflop_tenths(a: Card, b: Card) -> i64 {
    class_tenths(&hand_class(a, b)).expect("table covers every class")
}

/// The table as the prompt lists it: `[AA:84.9%, KK:..., 32o:...]`.
pub fn preflop_table_text() -> String {
    let items: Vec<String> = hand_classes()
        .into_iter()
        .map(|c| {
            let v = class_tenths(&c).unwrap_or(0);
            format!("{c}:{}.{}%", v / 10, v % 10)
        })
        .collect();
    format!("[{}]", items.join(", "))
}
