//! Per-subproblem accuracy and F1, the outcome metric O and the
//! intermediate metric I, aggregated per agent and game.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{GameId, MetricKind};
use crate::engine::record::MatchRecord;
use crate::payload::Payload;

/// A prediction (absent on parse failure) against its truth.
pub type Pair<'a> = (Option<&'a Payload>, &'a Payload);

/// Exact-match rate; `None` for no pairs.
pub fn score_accuracy(pairs: &[Pair]) -> Option<f64> {
    if pairs.is_empty() {
        return None;
    }
    let hits = pairs.iter().filter(|(p, t)| p == &Some(*t)).count();
    Some(hits as f64 / pairs.len() as f64)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct F1Counts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl F1Counts {
    pub fn of(predicted: Option<&Payload>, truth: &Payload) -> F1Counts {
        let truth = truth.positives();
        let predicted = predicted.map(Payload::positives).unwrap_or_default();
        F1Counts {
            tp: predicted.intersection(&truth).count(),
            fp: predicted.difference(&truth).count(),
            fn_: truth.difference(&predicted).count(),
        }
    }

    pub fn add(self, other: F1Counts) -> F1Counts {
        F1Counts { tp: self.tp + other.tp, fp: self.fp + other.fp, fn_: self.fn_ + other.fn_ }
    }

    /// 2TP / (2TP + FP + FN); a perfect 1.0 when there is nothing to find
    /// and nothing was claimed.
    pub fn f1(self) -> f64 {
        let denom = 2 * self.tp + self.fp + self.fn_;
        if denom == 0 {
            1.0
        } else {
            2.0 * self.tp as f64 / denom as f64
        }
    }
}

/// Micro-averaged F1 over the positives of every pair.
pub fn score_f1(pairs: &[Pair]) -> Option<f64> {
    if pairs.is_empty() {
        return None;
    }
    let total = pairs.iter().fold(F1Counts::default(), |acc, (p, t)| acc.add(F1Counts::of(*p, t)));
    Some(total.f1())
}

/// Mean of the per-pair F1 scores.
pub fn score_macro_f1(pairs: &[Pair]) -> Option<f64> {
    if pairs.is_empty() {
        return None;
    }
    Some(pairs.iter().map(|(p, t)| F1Counts::of(*p, t).f1()).sum::<f64>() / pairs.len() as f64)
}

pub fn score(metric: MetricKind, pairs: &[Pair]) -> Option<f64> {
    match metric {
        MetricKind::Accuracy => score_accuracy(pairs),
        MetricKind::F1 => score_f1(pairs),
    }
}

/// O = sum of rewards over sum of caps, over every seat `agent` held.
pub fn compute_outcome_metric<'a>(records: impl IntoIterator<Item = &'a MatchRecord>, agent: &str) -> Option<f64> {
    let (mut r, mut t) = (0.0, 0.0);
    for rec in records {
        for seat in rec.seats_of(agent) {
            r += rec.reward(seat);
            t += rec.reward_cap;
        }
    }
    (t > 0.0).then(|| r / t)
}

/// I, the mean of the subproblem scores.
pub fn compute_intermediate_metric(scores: &[f64]) -> Option<f64> {
    (!scores.is_empty()).then(|| scores.iter().sum::<f64>() / scores.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubproblemScore {
    pub index: usize,
    pub metric: MetricKind,
    /// Turns with a defined truth.
    pub turns: usize,
    pub score: Option<f64>,
    /// Macro-averaged F1, reported alongside micro F1 for set answers.
    pub macro_f1: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub agent: String,
    pub game: GameId,
    pub matches: usize,
    pub wins: usize,
    pub draws: usize,
    pub losses: usize,
    pub outcome: Option<f64>,
    /// Absent when the agent never reported an intermediate answer.
    pub intermediate: Option<f64>,
    pub subproblems: Vec<SubproblemScore>,
    pub decisions: usize,
    pub fallback_rate: f64,
}

impl ScoreRow {
    fn build(agent: &str, game: GameId, records: &[&MatchRecord]) -> ScoreRow {
        let mut pairs: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
        let (mut decisions, mut fallbacks, mut reported) = (0, 0, false);
        let (mut wins, mut draws, mut losses) = (0, 0, 0);
        for rec in records {
            let seats = rec.seats_of(agent);
            for &seat in &seats {
                let (mine, theirs) = (rec.reward(seat), rec.reward(seat.other()));
                if mine > theirs {
                    wins += 1;
                } else if mine < theirs {
                    losses += 1;
                } else {
                    draws += 1;
                }
            }
            for turn in rec.turns.iter().filter(|t| seats.contains(&t.seat)) {
                decisions += 1;
                fallbacks += turn.action_was_fallback as usize;
                reported |= turn.parsed.has_intermediates();
                for truth in &turn.truths {
                    let Some(value) = &truth.value else { continue };
                    let predicted = turn.parsed.intermediates.get(&truth.subproblem).and_then(|e| e.value());
                    pairs.entry(truth.subproblem).or_default().push((predicted, value));
                }
            }
        }
        let subproblems: Vec<SubproblemScore> = game
            .subproblems()
            .iter()
            .filter(|spec| spec.scored)
            .map(|spec| {
                let p = pairs.get(&spec.index).map(Vec::as_slice).unwrap_or(&[]);
                SubproblemScore {
                    index: spec.index,
                    metric: spec.metric,
                    turns: p.len(),
                    score: score(spec.metric, p),
                    macro_f1: (spec.metric == MetricKind::F1).then(|| score_macro_f1(p)).flatten(),
                }
            })
            .collect();
        let scores: Vec<f64> = subproblems.iter().filter_map(|s| s.score).collect();
        let outcome = compute_outcome_metric(records.iter().copied(), agent);
        ScoreRow {
            agent: agent.to_string(),
            game,
            matches: wins + draws + losses,
            wins,
            draws,
            losses,
            outcome,
            intermediate: if reported { compute_intermediate_metric(&scores) } else { None },
            subproblems,
            decisions,
            fallback_rate: if decisions == 0 { 0.0 } else { fallbacks as f64 / decisions as f64 },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Scoreboard {
    pub rows: Vec<ScoreRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Averages {
    pub outcome: Option<f64>,
    pub intermediate: Option<f64>,
    /// Mean of the two averages that are present.
    pub overall: Option<f64>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = values.collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"))
}

impl Scoreboard {
    pub fn from_records(records: &[MatchRecord]) -> Scoreboard {
        let mut groups: BTreeMap<(String, GameId), Vec<&MatchRecord>> = BTreeMap::new();
        for rec in records {
            let ids: BTreeSet<&String> = rec.agent_ids.iter().collect();
            for id in ids {
                groups.entry((id.clone(), rec.config.game_id)).or_default().push(rec);
            }
        }
        let rows = groups.into_iter().map(|((agent, game), recs)| ScoreRow::build(&agent, game, &recs)).collect();
        Scoreboard { rows }
    }

    pub fn row(&self, agent: &str, game: GameId) -> Option<&ScoreRow> {
        self.rows.iter().find(|r| r.agent == agent && r.game == game)
    }

    pub fn agents(&self) -> Vec<String> {
        let set: BTreeSet<&String> = self.rows.iter().map(|r| &r.agent).collect();
        set.into_iter().cloned().collect()
    }

    pub fn games(&self) -> Vec<GameId> {
        let set: BTreeSet<GameId> = self.rows.iter().map(|r| r.game).collect();
        set.into_iter().collect()
    }

    /// Unweighted means over the games an agent played.
    pub fn averages(&self, agent: &str) -> Averages {
        let rows: Vec<&ScoreRow> = self.rows.iter().filter(|r| r.agent == agent).collect();
        let outcome = mean(rows.iter().filter_map(|r| r.outcome));
        let intermediate = mean(rows.iter().filter_map(|r| r.intermediate));
        let overall = mean(outcome.into_iter().chain(intermediate));
        Averages { outcome, intermediate, overall }
    }

    pub fn to_csv(&self) -> String {
        let width = self.rows.iter().map(|r| r.subproblems.len()).max().unwrap_or(0);
        let mut out = String::from("agent,game,matches,wins,draws,losses,O,I");
        for i in 1..=width {
            out.push_str(&format!(",P{i}"));
        }
        out.push_str(",decisions,fallback_rate\n");
        let num = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        for r in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.agent,
                r.game,
                r.matches,
                r.wins,
                r.draws,
                r.losses,
                num(r.outcome),
                num(r.intermediate)
            );
            for i in 0..width {
                out.push(',');
                out.push_str(&num(r.subproblems.get(i).and_then(|s| s.score)));
            }
            let _ = writeln!(out, ",{},{:.6}", r.decisions, r.fallback_rate);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let agent_width = self.rows.iter().map(|r| r.agent.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(
            out,
            "{:<agent_width$}  {:<11} {:>5} {:>8} {:>7} {:>7}  subproblems",
            "agent", "game", "games", "W/D/L", "O", "I"
        );
        for r in &self.rows {
            let subs: Vec<String> = r.subproblems.iter().map(|s| format!("P{}={}", s.index, cell(s.score))).collect();
            let _ = writeln!(
                out,
                "{:<agent_width$}  {:<11} {:>5} {:>8} {:>7} {:>7}  {}",
                r.agent,
                r.game.display_name(),
                r.matches,
                format!("{}/{}/{}", r.wins, r.draws, r.losses),
                cell(r.outcome),
                cell(r.intermediate),
                subs.join(" ")
            );
        }
        out.push('\n');
        let _ = writeln!(out, "{:<agent_width$}  {:>7} {:>7} {:>7}", "agent", "avg O", "avg I", "avg");
        for agent in self.agents() {
            let a = self.averages(&agent);
            let _ = writeln!(
                out,
                "{:<agent_width$}  {:>7} {:>7} {:>7}",
                agent,
                cell(a.outcome),
                cell(a.intermediate),
                cell(a.overall)
            );
        }
        out
    }
}
