use crate::catalog::{GameId, PayloadKind};
use crate::payload::{Payload, SubproblemTruth};

/// Renders a payload in the exact format the prompts ask for.
pub fn format_payload(kind: PayloadKind, payload: &Payload) -> String {
    match payload {
        Payload::Bool(true) => "True".to_string(),
        Payload::Bool(false) => "False".to_string(),
        Payload::Int(v) => v.to_string(),
        Payload::Tenths(v) => format!("{}.{}", v / 10, v % 10),
        Payload::Label(l) => l.clone(),
        Payload::Set(items) if items.is_empty() => "None".to_string(),
        Payload::Set(items) => items.iter().cloned().collect::<Vec<_>>().join(", "),
        Payload::Map(map) => match kind {
            PayloadKind::AdjacentValues => ["Up", "Down", "Left", "Right"]
                .iter()
                .map(|k| format!("{k} {}", map.get(*k).map_or("-1", String::as_str)))
                .collect::<Vec<_>>()
                .join(", "),
            _ if map.is_empty() => "None".to_string(),
            _ => map.iter().map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>().join(", "),
        },
    }
}

/// The final-action line for a canonical action, as the prompt's output
/// section shows it.
pub fn action_line(game: GameId, action: &str) -> String {
    match game {
        GameId::Othello | GameId::Checkers | GameId::TicTacToe | GameId::Connect4 => {
            format!("Chosen Move: {action}")
        }
        GameId::Pong => {
            let digit = match action {
                "Move Up" => 1,
                "Move Down" => 2,
                _ => 0,
            };
            format!("{digit} - {action}")
        }
        GameId::Surround | GameId::TexasHoldem => action.to_string(),
        GameId::Negotiation => format!("Proposal: {action}"),
    }
}

fn action_header(game: GameId) -> &'static str {
    match game {
        GameId::Pong => "**[Action]**",
        GameId::Surround | GameId::TexasHoldem => "**Chosen Action**",
        GameId::Negotiation => "**Proposal**",
        _ => "**Chosen Move**",
    }
}

/// A complete reply carrying every defined truth and the final action.
pub fn format_reply(game: GameId, truths: &[SubproblemTruth], action: &str) -> String {
    let mut out = String::new();
    for truth in truths {
        let Some(value) = &truth.value else { continue };
        let Some(spec) = game.subproblems().iter().find(|s| s.index == truth.subproblem) else { continue };
        out.push_str(&format!(
            "[Intermediate Thinking Results {}: {}]\n",
            truth.subproblem,
            format_payload(spec.kind, value)
        ));
    }
    out.push('\n');
    out.push_str(action_header(game));
    out.push('\n');
    out.push_str(&action_line(game, action));
    out.push('\n');
    out
}
