use std::collections::BTreeMap;

use crate::catalog::GameId;
use crate::error::{ArenaError, Result};
use crate::protocol::PromptVariant;

pub const STATE_SLOT: &str = "state";
const PREFLOP_SLOT: &str = "preflop_table";

const OTHELLO: &str = include_str!("templates/othello.txt");
const PONG: &str = include_str!("templates/pong.txt");
const SURROUND: &str = include_str!("templates/surround.txt");
const CHECKERS: &str = include_str!("templates/checkers.txt");
const TIC_TAC_TOE: &str = include_str!("templates/tic_tac_toe.txt");
const CONNECT4: &str = include_str!("templates/connect4.txt");
const TEXAS_HOLDEM: &str = include_str!("templates/texas_holdem.txt");
const NEGOTIATION: &str = include_str!("templates/negotiation.txt");

const STATE_SECTION: &str = "\n**Current Game State**\n{{state}}\n";

fn curated_text(game: GameId) -> &'static str {
    match game {
        GameId::Othello => OTHELLO,
        GameId::Pong => PONG,
        GameId::Surround => SURROUND,
        GameId::Checkers => CHECKERS,
        GameId::TicTacToe => TIC_TAC_TOE,
        GameId::Connect4 => CONNECT4,
        GameId::TexasHoldem => TEXAS_HOLDEM,
        GameId::Negotiation => NEGOTIATION,
    }
}

/// The rules and input description, without strategy or subproblem steps.
fn rules_text(game: GameId) -> &'static str {
    let text = curated_text(game);
    let marker = match game {
        GameId::Pong => "Your strategy is that",
        _ => "**Output**",
    };
    let cut = text.find(marker).expect("template carries its output marker");
    &text[..cut]
}

fn action_format(game: GameId) -> &'static str {
    match game {
        GameId::Othello => "The format is: \"Chosen Move: (X,X)\", where X,X is the column letter (A-H) and the row number (1-8).",
        GameId::Pong => "The format is one of: \"0 - Stay Still\", \"1 - Move Up\", \"2 - Move Down\".",
        GameId::Surround => "The format is one of: \"Move Up\", \"Move Down\", \"Move Left\", \"Move Right\".",
        GameId::Checkers => "The format is: \"Chosen Move: (X,X)->(X,X)\".",
        GameId::TicTacToe => "The format is: \"Chosen Move: (a,b)\", where a (value 0-2) is row, and b (value 0-2) is column.",
        GameId::Connect4 => "The format is: \"Chosen Move: (a,b)\", where a is the row number (0-5), and b is the column number (0-6) where you want to place your disc.",
        GameId::TexasHoldem => "The format is: \"Fold\", \"Check and Call\", \"Raise Half Pot\", \"Raise Full Pot\", \"All in\".",
        GameId::Negotiation => "If you agree with the opponent's latest proposal, output \"Proposal: [Agree]\". Otherwise the format is: \"Proposal: [P1: (X,X,X), P2: (X,X,X)]\", where X is the number of items for each kind.",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplate {
    pub game_id: GameId,
    pub variant: PromptVariant,
    pub body: String,
    pub slots: Vec<&'static str>,
}

impl PromptTemplate {
    pub fn new(game_id: GameId, variant: PromptVariant) -> PromptTemplate {
        let mut body = match variant {
            PromptVariant::CuratedCoT => curated_text(game_id).to_string(),
            PromptVariant::GenericCoT => format!(
                "{}**Output**\nProvide your chosen move. Let's think step by step, then give your final answer on the last line.\n{}\n",
                rules_text(game_id),
                action_format(game_id)
            ),
            PromptVariant::ActionOnly => format!(
                "{}**Output**\nOnly output your chosen move. Do not include any other words.\n{}\n",
                rules_text(game_id),
                action_format(game_id)
            ),
        };
        body.push_str(STATE_SECTION);
        let slots = if body.contains("{{preflop_table}}") { vec![PREFLOP_SLOT, STATE_SLOT] } else { vec![STATE_SLOT] };
        PromptTemplate { game_id, variant, body, slots }
    }

    /// Substitutes every `{{slot}}`. Missing or unknown slots are errors.
    pub fn render(&self, values: &BTreeMap<&str, &str>) -> Result<String> {
        for key in values.keys() {
            if !self.slots.contains(key) {
                return Err(ArenaError::Template(format!("{} template has no slot '{key}'", self.game_id)));
            }
        }
        let mut out = String::with_capacity(self.body.len() + 256);
        let mut rest = self.body.as_str();
        while let Some(open) = rest.find("{{") {
            let close = rest[open..]
                .find("}}")
                .map(|c| open + c)
                .ok_or_else(|| ArenaError::Template("unterminated slot".into()))?;
            let name = &rest[open + 2..close];
            let value = values
                .get(name)
                .ok_or_else(|| ArenaError::Template(format!("missing value for slot '{name}'")))?;
            out.push_str(&rest[..open]);
            out.push_str(value);
            rest = &rest[close + 2..];
        }
        out.push_str(rest);
        Ok(out)
    }
}

/// Builds the full prompt for `game` around an already rendered state.
pub fn render_prompt(game: GameId, variant: PromptVariant, state_text: &str) -> Result<String> {
    let template = PromptTemplate::new(game, variant);
    let mut values = BTreeMap::new();
    values.insert(STATE_SLOT, state_text);
    let table;
    if template.slots.contains(&PREFLOP_SLOT) {
        table = crate::games::holdem::preflop_table_text();
        values.insert(PREFLOP_SLOT, table.as_str());
    }
    template.render(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curated_othello_has_rules_header() {
        let p = render_prompt(GameId::Othello, PromptVariant::CuratedCoT, "BOARD").unwrap();
        assert!(p.contains("**Game Rules**"));
        assert!(p.contains("[Intermediate Thinking Results 2: (X,X), (X,X), ...]"));
        assert!(p.ends_with("**Current Game State**\nBOARD\n"));
    }

    #[test]
    fn action_only_has_no_intermediate_requests() {
        for game in GameId::ALL {
            let p = render_prompt(game, PromptVariant::ActionOnly, "S").unwrap();
            assert!(!p.contains("Intermediate Thinking"), "{game}");
            let g = render_prompt(game, PromptVariant::GenericCoT, "S").unwrap();
            assert!(!g.contains("Intermediate Thinking"), "{game}");
            assert!(g.contains("think step by step"), "{game}");
        }
    }

    #[test]
    fn rendering_is_byte_stable() {
        for game in GameId::ALL {
            for v in [PromptVariant::CuratedCoT, PromptVariant::GenericCoT, PromptVariant::ActionOnly] {
                assert_eq!(render_prompt(game, v, "x").unwrap(), render_prompt(game, v, "x").unwrap());
            }
        }
    }

    #[test]
    fn missing_slot_is_an_error() {
        let t = PromptTemplate::new(GameId::TicTacToe, PromptVariant::CuratedCoT);
        assert!(matches!(t.render(&BTreeMap::new()), Err(ArenaError::Template(_))));
        let t = PromptTemplate::new(GameId::TexasHoldem, PromptVariant::CuratedCoT);
        let only_state = BTreeMap::from([(STATE_SLOT, "s")]);
        assert!(t.render(&only_state).is_err());
        let unknown = BTreeMap::from([(STATE_SLOT, "s"), ("bogus", "x")]);
        assert!(PromptTemplate::new(GameId::Pong, PromptVariant::ActionOnly).render(&unknown).is_err());
    }

    #[test]
    fn holdem_prompt_lists_the_full_table() {
        let p = render_prompt(GameId::TexasHoldem, PromptVariant::CuratedCoT, "s").unwrap();
        assert!(p.contains("[AA:84.9%, "));
        assert!(p.contains("43s:35.7%"));
        assert!(!p.contains("{{"));
    }
}
