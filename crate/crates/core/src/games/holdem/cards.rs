use rand::seq::SliceRandom;
use rand::Rng;

pub const SUITS: [&str; 4] = ["Spades", "Hearts", "Diamonds", "Clubs"];
const RANK_TEXT: [&str; 13] = ["2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K", "A"];
/// Single-character ranks used by hand classes such as `AKs`.
pub const RANK_CHARS: [char; 13] = ['2', '3', '4', '5', '6', '7', '8', '9', 'T', 'J', 'Q', 'K', 'A'];

/// A card coded 0..52: rank `code / 4` (0 is a deuce, 12 an ace), suit
/// `code % 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card(pub u8);

impl Card {
    pub fn new(rank: u8, suit: u8) -> Card {
        debug_assert!(rank < 13 && suit < 4);
        Card(rank * 4 + suit)
    }

    pub fn rank(self) -> u8 {
        self.0 / 4
    }

    pub fn suit(self) -> u8 {
        self.0 % 4
    }

    /// `Hearts Q`, `Clubs 10`.
    pub fn name(self) -> String {
        format!("{} {}", SUITS[self.suit() as usize], RANK_TEXT[self.rank() as usize])
    }

    pub fn parse(text: &str) -> Option<Card> {
        let (suit, rank) = text.trim().split_once(' ')?;
        let suit = SUITS.iter().position(|s| s.eq_ignore_ascii_case(suit))?;
        let rank = rank.trim().to_ascii_uppercase();
        let rank = RANK_TEXT.iter().position(|r| *r == rank).or_else(|| (rank == "T").then_some(8))?;
        Some(Card::new(rank as u8, suit as u8))
    }
}

pub fn deck() -> Vec<Card> {
    (0..52).map(Card).collect()
}

pub fn shuffled_deck<R: Rng>(rng: &mut R) -> Vec<Card> {
    let mut d = deck();
    d.shuffle(rng);
    d
}

pub fn card_list(cards: &[Card]) -> String {
    format!("[{}]", cards.iter().map(|c| c.name()).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in deck() {
            assert_eq!(Card::parse(&c.name()), Some(c));
        }
        assert_eq!(Card::new(10, 1).name(), "Hearts Q");
        assert_eq!(Card::new(8, 3).name(), "Clubs 10");
        assert_eq!(Card::parse("Diamonds T"), Some(Card::new(8, 2)));
    }
}
