use std::collections::{BTreeMap, BTreeSet};
use std::sync::LazyLock;

use regex::Regex;

use super::{Extracted, ParseMode, Span};
use crate::catalog::{CoordStyle, GameId, PayloadKind};
use crate::payload::Payload;

fn re(pattern: &str) -> Regex {
    Regex::new(pattern).expect("static pattern")
}

static MARKER: LazyLock<Regex> =
    LazyLock::new(|| re(r"(?i)\[\s*intermediate\s+thinking\s+results?\s*(\d+)\s*:([^\]]*)\]"));

static ROWCOL: LazyLock<Regex> = LazyLock::new(|| re(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)"));
static ROWCOL_STRICT_LIST: LazyLock<Regex> = LazyLock::new(|| re(r"^\(\d+,\d+\)(?:, ?\(\d+,\d+\))*$"));
static LETTER: LazyLock<Regex> = LazyLock::new(|| re(r"\(\s*([A-Ha-h])\s*,\s*([1-8])\s*\)"));
static LETTER_STRICT_LIST: LazyLock<Regex> = LazyLock::new(|| re(r"^\([A-H],[1-8]\)(?:, ?\([A-H],[1-8]\))*$"));
static PATH: LazyLock<Regex> =
    LazyLock::new(|| re(r"\(\s*\d+\s*,\s*\d+\s*\)(?:\s*-+>\s*\(\s*\d+\s*,\s*\d+\s*\))+"));
static PATH_STRICT_LIST: LazyLock<Regex> =
    LazyLock::new(|| re(r"^\(\d+,\d+\)(?:->\(\d+,\d+\))+(?:, ?\(\d+,\d+\)(?:->\(\d+,\d+\))+)*$"));
static DIRECTION_WORD: LazyLock<Regex> = LazyLock::new(|| re(r"(?i)\b(?:move\s+)?(up|down|left|right)\b"));
static ACTION_STRICT_LIST: LazyLock<Regex> =
    LazyLock::new(|| re(r"^Move (?:Up|Down|Left|Right)(?:, ?Move (?:Up|Down|Left|Right))*$"));
static ADJACENT_STRICT: LazyLock<Regex> =
    LazyLock::new(|| re(r"^Up (-?\d+), Down (-?\d+), Left (-?\d+), Right (-?\d+)$"));
static ADJACENT_PAIR: LazyLock<Regex> = LazyLock::new(|| re(r"(?i)\b(up|down|left|right)\s*[:=]?\s*(-?\d+)"));
static SAFETY_PAIR: LazyLock<Regex> =
    LazyLock::new(|| re(r"(?i)\b(?:move\s+)?(up|down|left|right)\s*[:\-]?\s*(unsafe|safe)\b"));
static SAFETY_STRICT_LIST: LazyLock<Regex> = LazyLock::new(|| {
    re(r"^Move (?:Up|Down|Left|Right) (?:Safe|Unsafe)(?:, ?Move (?:Up|Down|Left|Right) (?:Safe|Unsafe))*$")
});
static NUMBER: LazyLock<Regex> = LazyLock::new(|| re(r"-?\d+(?:\.\d+)?"));

static CHOSEN_COORD: LazyLock<Regex> =
    LazyLock::new(|| re(r"(?i)chosen\s+move\s*:?\s*\(\s*([A-Za-z]|\d+)\s*,\s*(\d+)\s*\)"));
static CHOSEN_PATH: LazyLock<Regex> = LazyLock::new(|| {
    re(r"(?i)chosen\s+move\s*:?\s*(\(\s*\d+\s*,\s*\d+\s*\)(?:\s*-+>\s*\(\s*\d+\s*,\s*\d+\s*\))+)")
});
static PONG_ACTION: LazyLock<Regex> =
    LazyLock::new(|| re(r"(?i)\b(?:([012])\s*-\s*)?(stay\s+still|move\s+up|move\s+down)\b"));
static PONG_DIGIT_LINE: LazyLock<Regex> = LazyLock::new(|| re(r"(?m)^\s*\**\s*([012])\s*\**\s*$"));
static SURROUND_ACTION: LazyLock<Regex> = LazyLock::new(|| re(r"(?i)\bmove\s+(up|down|left|right)\b"));
static HOLDEM_ACTION: LazyLock<Regex> =
    LazyLock::new(|| re(r"(?i)\b(fold|check\s+and\s+call|raise\s+half\s+pot|raise\s+full\s+pot|all[\s-]*in)\b"));
static HOLDEM_LOOSE: LazyLock<Regex> = LazyLock::new(|| {
    re(r"(?i)\b(fold|check\s+and\s+call|raise\s+half\s+pot|raise\s+full\s+pot|all[\s-]*in|check|call)\b")
});
static PROPOSAL: LazyLock<Regex> = LazyLock::new(|| {
    re(r"(?i)proposal\s*:\s*\[\s*(?:(agree)|p1\s*:\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*,\s*p2\s*:\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\))\s*\]")
});
static ACTION_HEADER: LazyLock<Regex> = LazyLock::new(|| re(r"(?i)chosen\s+action|\[\s*action\s*\]"));

fn title(word: &str) -> String {
    let lower = word.to_ascii_lowercase();
    let mut chars = lower.chars();
    match chars.next() {
        Some(c) => c.to_ascii_uppercase().to_string() + chars.as_str(),
        None => String::new(),
    }
}

fn is_none(raw: &str) -> bool {
    let t = raw.trim().trim_end_matches('.').trim();
    t.eq_ignore_ascii_case("none") || t.is_empty() || t == "[]" || t == "∅"
}

fn canonical_path(m: &str) -> String {
    ROWCOL
        .captures_iter(m)
        .map(|c| format!("({},{})", &c[1], &c[2]))
        .collect::<Vec<_>>()
        .join("->")
}

fn parse_tenths(token: &str) -> Option<i64> {
    let value: f64 = token.parse().ok()?;
    if !value.is_finite() || value < 0.0 {
        return None;
    }
    Some((value * 10.0).round() as i64)
}

/// Parses one marker payload according to its declared kind.
pub fn parse_payload(kind: PayloadKind, raw: &str, mode: ParseMode) -> Result<Payload, String> {
    let text = raw.trim();
    let strict = mode == ParseMode::Strict;
    let fail = || Err(format!("cannot read {kind:?} from '{text}'"));
    match kind {
        PayloadKind::Bool => {
            if strict {
                return match text {
                    "True" => Ok(Payload::Bool(true)),
                    "False" => Ok(Payload::Bool(false)),
                    _ => fail(),
                };
            }
            match text.trim_end_matches('.').to_ascii_lowercase().as_str() {
                "true" | "yes" => Ok(Payload::Bool(true)),
                "false" | "no" => Ok(Payload::Bool(false)),
                _ => fail(),
            }
        }
        PayloadKind::Integer => {
            if let Ok(v) = text.parse::<i64>() {
                return Ok(Payload::Int(v));
            }
            if strict {
                return fail();
            }
            let numbers: Vec<&str> = NUMBER.find_iter(text).map(|m| m.as_str()).collect();
            match numbers.as_slice() {
                [only] => match only.parse::<i64>() {
                    Ok(v) => Ok(Payload::Int(v)),
                    Err(_) => fail(),
                },
                _ => fail(),
            }
        }
        PayloadKind::Percent => {
            if strict {
                let ok = text.split_once('.').map_or(text.len(), |(a, b)| if b.len() == 1 { a.len() } else { 0 });
                if ok == 0 || !text.chars().all(|c| c.is_ascii_digit() || c == '.') {
                    return fail();
                }
                return parse_tenths(text).map(Payload::Tenths).ok_or_else(|| format!("bad percent '{text}'"));
            }
            let stripped = text.trim_end_matches('.').trim_end_matches('%').trim();
            if let Some(v) = parse_tenths(stripped) {
                return Ok(Payload::Tenths(v));
            }
            let numbers: Vec<&str> = NUMBER.find_iter(text).map(|m| m.as_str()).collect();
            match numbers.as_slice() {
                [only] => parse_tenths(only).map(Payload::Tenths).ok_or_else(|| format!("bad percent '{text}'")),
                _ => fail(),
            }
        }
        PayloadKind::Direction => {
            const LABELS: [&str; 4] = ["Left Down", "Right Up", "Left Up", "Right Down"];
            if strict {
                return LABELS.iter().find(|l| **l == text).map(|l| Payload::Label(l.to_string())).ok_or(()).or_else(|_| fail());
            }
            let lower = text.to_ascii_lowercase();
            let words: Vec<&str> = lower.split(|c: char| !c.is_ascii_alphabetic()).filter(|w| !w.is_empty()).collect();
            let horizontal: BTreeSet<&str> = words.iter().copied().filter(|w| *w == "left" || *w == "right").collect();
            let vertical: BTreeSet<&str> = words.iter().copied().filter(|w| *w == "up" || *w == "down").collect();
            match (horizontal.len(), vertical.len()) {
                (1, 1) => Ok(Payload::Label(format!(
                    "{} {}",
                    title(horizontal.iter().next().unwrap()),
                    title(vertical.iter().next().unwrap())
                ))),
                _ => fail(),
            }
        }
        PayloadKind::CoordSet(style) => {
            if is_none(text) && (!strict || text == "None") {
                return Ok(Payload::Set(BTreeSet::new()));
            }
            let (list, item) = match style {
                CoordStyle::RowCol => (&*ROWCOL_STRICT_LIST, &*ROWCOL),
                CoordStyle::LetterNumber => (&*LETTER_STRICT_LIST, &*LETTER),
            };
            if strict && !list.is_match(text) {
                return fail();
            }
            let items: BTreeSet<String> = item
                .captures_iter(text)
                .map(|c| format!("({},{})", c[1].to_ascii_uppercase(), &c[2]))
                .collect();
            if items.is_empty() {
                return fail();
            }
            Ok(Payload::Set(items))
        }
        PayloadKind::MoveSet => {
            if is_none(text) && (!strict || text == "None") {
                return Ok(Payload::Set(BTreeSet::new()));
            }
            if strict && !PATH_STRICT_LIST.is_match(text) {
                return fail();
            }
            let items: BTreeSet<String> = PATH.find_iter(text).map(|m| canonical_path(m.as_str())).collect();
            if items.is_empty() {
                return fail();
            }
            Ok(Payload::Set(items))
        }
        PayloadKind::ActionSet => {
            if is_none(text) && (!strict || text == "None") {
                return Ok(Payload::Set(BTreeSet::new()));
            }
            if strict && !ACTION_STRICT_LIST.is_match(text) {
                return fail();
            }
            let items: BTreeSet<String> =
                DIRECTION_WORD.captures_iter(text).map(|c| format!("Move {}", title(&c[1]))).collect();
            if items.is_empty() {
                return fail();
            }
            Ok(Payload::Set(items))
        }
        PayloadKind::AdjacentValues => {
            let mut map = BTreeMap::new();
            if strict {
                let Some(c) = ADJACENT_STRICT.captures(text) else { return fail() };
                for (i, key) in ["Up", "Down", "Left", "Right"].iter().enumerate() {
                    map.insert(key.to_string(), c[i + 1].to_string());
                }
                return Ok(Payload::Map(map));
            }
            for c in ADJACENT_PAIR.captures_iter(text) {
                let value: i64 = c[2].parse().map_err(|_| format!("bad value in '{text}'"))?;
                map.insert(title(&c[1]), value.to_string());
            }
            if map.len() != 4 {
                return fail();
            }
            Ok(Payload::Map(map))
        }
        PayloadKind::SafetyMap => {
            if is_none(text) && (!strict || text == "None") {
                return Ok(Payload::Map(BTreeMap::new()));
            }
            if strict && !SAFETY_STRICT_LIST.is_match(text) {
                return fail();
            }
            let map: BTreeMap<String, String> = SAFETY_PAIR
                .captures_iter(text)
                .map(|c| (format!("Move {}", title(&c[1])), title(&c[2])))
                .collect();
            if map.is_empty() {
                return fail();
            }
            Ok(Payload::Map(map))
        }
    }
}

/// Finds every `[Intermediate Thinking Results N: ...]` marker for the
/// game's declared subproblems. The last marker for a given N wins.
pub fn extract_intermediates(
    text: &str,
    game: GameId,
    mode: ParseMode,
) -> BTreeMap<usize, (Extracted<Payload>, Span)> {
    let mut out = BTreeMap::new();
    for caps in MARKER.captures_iter(text) {
        let Ok(index) = caps[1].parse::<usize>() else { continue };
        let Some(spec) = game.subproblems().iter().find(|s| s.index == index) else { continue };
        let payload = caps.get(2).expect("payload group");
        let span = Span { field: format!("intermediate:{index}"), start: payload.start(), end: payload.end() };
        let value = match parse_payload(spec.kind, payload.as_str(), mode) {
            Ok(v) => Extracted::Value(v),
            Err(e) => Extracted::ParseFailure(e),
        };
        out.insert(index, (value, span));
    }
    out
}

/// Replaces marker regions with spaces so action patterns cannot match
/// inside them; byte offsets are preserved.
fn mask_markers(text: &str) -> String {
    let mut masked = text.to_string();
    for m in MARKER.find_iter(text) {
        masked.replace_range(m.start()..m.end(), &" ".repeat(m.end() - m.start()));
    }
    masked
}

fn last_match<'t>(pattern: &Regex, text: &'t str, from: usize) -> Option<regex::Captures<'t>> {
    let mut last = None;
    let mut pos = from;
    while pos <= text.len() {
        let Some(c) = pattern.captures_at(text, pos) else { break };
        let m = c.get(0).expect("group 0");
        pos = if m.end() > m.start() { m.end() } else { m.end() + 1 };
        last = Some(c);
    }
    last
}

fn span(start: usize, end: usize) -> Span {
    Span { field: "action".to_string(), start, end }
}

/// Extracts the final action in its canonical text form. The last
/// matching occurrence in the reply wins.
pub fn extract_action(text: &str, game: GameId) -> Result<(String, Span), String> {
    let masked = mask_markers(text);
    let t = masked.as_str();
    let header_end = ACTION_HEADER.find_iter(t).last().map(|m| m.end());
    let missing = || Err(format!("no {game} action found"));
    match game {
        GameId::Othello | GameId::TicTacToe | GameId::Connect4 => {
            let Some(c) = last_match(&CHOSEN_COORD, t, 0) else { return missing() };
            let m = c.get(0).unwrap();
            let (a, b) = (&c[1], &c[2]);
            let letter = a.chars().all(|ch| ch.is_ascii_alphabetic());
            match (game, letter) {
                (GameId::Othello, true) => Ok((format!("({},{})", a.to_ascii_uppercase(), b), span(m.start(), m.end()))),
                (GameId::TicTacToe | GameId::Connect4, false) => Ok((format!("({a},{b})"), span(m.start(), m.end()))),
                _ => Err(format!("coordinate style does not fit {game}")),
            }
        }
        GameId::Checkers => {
            let Some(c) = last_match(&CHOSEN_PATH, t, 0) else { return missing() };
            let m = c.get(0).unwrap();
            Ok((canonical_path(&c[1]), span(m.start(), m.end())))
        }
        GameId::Pong => {
            let from = header_end.unwrap_or(0);
            if let Some(c) = last_match(&PONG_ACTION, t, from) {
                let m = c.get(0).unwrap();
                let label = c[2].split_whitespace().map(title).collect::<Vec<_>>().join(" ");
                let digit = match label.as_str() {
                    "Stay Still" => "0",
                    "Move Up" => "1",
                    _ => "2",
                };
                if let Some(d) = c.get(1) {
                    if d.as_str() != digit {
                        return Err(format!("action number {} disagrees with '{label}'", d.as_str()));
                    }
                }
                return Ok((label, span(m.start(), m.end())));
            }
            let Some(c) = last_match(&PONG_DIGIT_LINE, t, from) else { return missing() };
            let m = c.get(1).unwrap();
            let label = ["Stay Still", "Move Up", "Move Down"][m.as_str().parse::<usize>().unwrap()];
            Ok((label.to_string(), span(m.start(), m.end())))
        }
        GameId::Surround => {
            let from = header_end.unwrap_or(0);
            let c = last_match(&SURROUND_ACTION, t, from).or_else(|| last_match(&SURROUND_ACTION, t, 0));
            let Some(c) = c else { return missing() };
            let m = c.get(0).unwrap();
            Ok((format!("Move {}", title(&c[1])), span(m.start(), m.end())))
        }
        GameId::TexasHoldem => {
            let c = match header_end {
                Some(from) => last_match(&HOLDEM_LOOSE, t, from).or_else(|| last_match(&HOLDEM_ACTION, t, 0)),
                None => last_match(&HOLDEM_ACTION, t, 0),
            };
            let Some(c) = c else { return missing() };
            let m = c.get(0).unwrap();
            let words: String = c[1].to_ascii_lowercase().chars().filter(|ch| ch.is_ascii_alphabetic()).collect();
            let action = match words.as_str() {
                "fold" => "Fold",
                "checkandcall" | "check" | "call" => "Check and Call",
                "raisehalfpot" => "Raise Half Pot",
                "raisefullpot" => "Raise Full Pot",
                _ => "All in",
            };
            Ok((action.to_string(), span(m.start(), m.end())))
        }
        GameId::Negotiation => {
            let Some(c) = last_match(&PROPOSAL, t, 0) else { return missing() };
            let m = c.get(0).unwrap();
            if c.get(1).is_some() {
                return Ok(("[Agree]".to_string(), span(m.start(), m.end())));
            }
            let n: Vec<&str> = (2..=7).map(|i| c.get(i).unwrap().as_str()).collect();
            Ok((
                format!("[P1: ({},{},{}), P2: ({},{},{})]", n[0], n[1], n[2], n[3], n[4], n[5]),
                span(m.start(), m.end()),
            ))
        }
    }
}
