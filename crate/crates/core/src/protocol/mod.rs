//! Prompt assembly and extraction of intermediate answers and final actions
//! from free-form agent replies.

mod extract;
mod format;
mod templates;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::GameId;
use crate::payload::Payload;

pub use extract::{extract_action, extract_intermediates, parse_payload};
pub use format::{action_line, format_payload, format_reply};
pub use templates::{render_prompt, PromptTemplate, STATE_SLOT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum PromptVariant {
    /// Strategy-infused prompt that walks through every subproblem.
    #[default]
    #[serde(rename = "curated_cot")]
    CuratedCoT,
    /// Rules plus a single think-step-by-step instruction.
    #[serde(rename = "generic_cot")]
    GenericCoT,
    /// Rules plus a request for the final action only.
    #[serde(rename = "action_only")]
    ActionOnly,
}

impl std::str::FromStr for PromptVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "curated" | "curatedcot" => Ok(PromptVariant::CuratedCoT),
            "generic" | "genericcot" => Ok(PromptVariant::GenericCoT),
            "actiononly" | "action" => Ok(PromptVariant::ActionOnly),
            _ => Err(format!("unknown prompt variant '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ParseMode {
    /// Tolerates spacing, case, `%` suffixes and yes/no booleans.
    #[default]
    Lenient,
    /// Accepts only the exact formats the prompts declare.
    Strict,
}

impl ParseMode {
    pub fn from_strict(strict: bool) -> ParseMode {
        if strict {
            ParseMode::Strict
        } else {
            ParseMode::Lenient
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extracted<T> {
    Value(T),
    ParseFailure(String),
}

impl<T> Extracted<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Extracted::Value(v) => Some(v),
            Extracted::ParseFailure(_) => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Extracted::Value(_))
    }
}

/// Byte range of `text` an extraction came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub field: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedResponse {
    pub intermediates: BTreeMap<usize, Extracted<Payload>>,
    /// Canonical action text, before legality is checked.
    pub action: Extracted<String>,
    pub raw_spans: Vec<Span>,
}

impl ParsedResponse {
    /// Parses every declared subproblem and the final action out of `text`.
    pub fn parse(text: &str, game: GameId, mode: ParseMode) -> ParsedResponse {
        let mut raw_spans = Vec::new();
        let found = extract_intermediates(text, game, mode);
        let mut intermediates = BTreeMap::new();
        for spec in game.subproblems() {
            let entry = match found.get(&spec.index) {
                Some((value, span)) => {
                    raw_spans.push(span.clone());
                    value.clone()
                }
                None => Extracted::ParseFailure(format!("no marker for subproblem {}", spec.index)),
            };
            intermediates.insert(spec.index, entry);
        }
        let action = match extract_action(text, game) {
            Ok((value, span)) => {
                raw_spans.push(span);
                Extracted::Value(value)
            }
            Err(reason) => Extracted::ParseFailure(reason),
        };
        ParsedResponse { intermediates, action, raw_spans }
    }

    /// True when the reply carried at least one intermediate marker.
    pub fn has_intermediates(&self) -> bool {
        self.raw_spans.iter().any(|s| s.field.starts_with("intermediate"))
    }
}
