//! Normalized answers to subproblems, shared by oracles, the text protocol
//! and scoring.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Payload {
    Bool(bool),
    Int(i64),
    /// A percentage in tenths: `35.7` is stored as `357`.
    Tenths(i64),
    Label(String),
    Set(BTreeSet<String>),
    Map(BTreeMap<String, String>),
}

impl Payload {
    pub fn set<I, S>(items: I) -> Payload
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Payload::Set(items.into_iter().map(Into::into).collect())
    }

    pub fn map<I, K, V>(items: I) -> Payload
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        Payload::Map(items.into_iter().map(|(k, v)| (k.into(), v.into())).collect())
    }

    /// The positive-class elements used for F1 scoring.
    ///
    /// Sets are their own elements, a boolean is positive when true, and a
    /// safety map contributes the actions labelled `Safe`.
    pub fn positives(&self) -> BTreeSet<String> {
        match self {
            Payload::Set(s) => s.clone(),
            Payload::Bool(true) => BTreeSet::from(["True".to_string()]),
            Payload::Bool(false) => BTreeSet::new(),
            Payload::Map(m) => m.iter().filter(|(_, v)| v.as_str() == "Safe").map(|(k, _)| k.clone()).collect(),
            Payload::Int(v) | Payload::Tenths(v) => BTreeSet::from([v.to_string()]),
            Payload::Label(l) => BTreeSet::from([l.clone()]),
        }
    }
}

/// Answer to one subproblem at one turn. `value` is `None` when the
/// subproblem has no defined answer at that turn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubproblemTruth {
    pub subproblem: usize,
    pub value: Option<Payload>,
}
