//! On-disk formats: JSON instances and witnesses, DIMACS-like graphs.
//!
//! Players, suits and vertices are 1-based in every file; token entries
//! index the objective list from 0.

use std::collections::BTreeMap;

use crew_core::reduce::{Graph, GraphError};
use crew_core::{Card, Instance, InstanceError, Objective, Play, PlaySequence, TokenConstraint, Trick};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("players: file declares {declared} players but lists {hands} hands")]
    PlayerCount { declared: usize, hands: usize },
    #[error("{field}: player {value} is outside 1..={players}")]
    Seat { field: &'static str, value: usize, players: usize },
    #[error("graph line {line}: {message}")]
    GraphSyntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardDoc {
    pub v: u32,
    pub s: u32,
}

impl From<Card> for CardDoc {
    fn from(c: Card) -> Self {
        CardDoc { v: c.value, s: c.suit }
    }
}

impl From<CardDoc> for Card {
    fn from(c: CardDoc) -> Self {
        Card::new(c.v, c.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveDoc {
    pub card: CardDoc,
    pub owner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenDoc {
    pub objective: usize,
    #[serde(default)]
    pub before: Vec<usize>,
    #[serde(default)]
    pub after: Vec<usize>,
}

/// Optional provenance carried alongside an instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub generator: BTreeMap<String, serde_json::Value>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self.name.is_none() && self.seed.is_none() && self.generator.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub players: usize,
    pub k: u32,
    pub s: u32,
    pub trump_suit: Option<u32>,
    pub lead: Option<usize>,
    pub hands: Vec<Vec<CardDoc>>,
    #[serde(default)]
    pub objectives: Vec<ObjectiveDoc>,
    #[serde(default)]
    pub tokens: Vec<TokenDoc>,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub meta: Metadata,
}

fn seat(field: &'static str, value: usize, players: usize) -> Result<usize, FormatError> {
    if value == 0 || value > players {
        return Err(FormatError::Seat { field, value, players });
    }
    Ok(value - 1)
}

impl InstanceDocument {
    pub fn from_instance(instance: &Instance, meta: Metadata) -> Self {
        InstanceDocument {
            players: instance.players(),
            k: instance.value_bound(),
            s: instance.suit_bound(),
            trump_suit: instance.trump_suit(),
            lead: instance.first_lead().map(|l| l + 1),
            hands: instance.hands().iter().map(|h| h.iter().map(|&c| c.into()).collect()).collect(),
            objectives: instance
                .objectives()
                .iter()
                .map(|o| ObjectiveDoc { card: o.card.into(), owner: o.owner + 1 })
                .collect(),
            tokens: instance
                .tokens()
                .iter()
                .map(|t| TokenDoc { objective: t.objective, before: t.before.clone(), after: t.after.clone() })
                .collect(),
            meta,
        }
    }

    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        let p = self.players;
        if self.hands.len() != p {
            return Err(FormatError::PlayerCount { declared: p, hands: self.hands.len() });
        }
        let hands = self.hands.iter().map(|h| h.iter().map(|&c| c.into()).collect()).collect();
        let objectives = self
            .objectives
            .iter()
            .map(|o| Ok(Objective { card: o.card.into(), owner: seat("owner_range", o.owner, p)? }))
            .collect::<Result<Vec<_>, FormatError>>()?;
        let lead = self.lead.map(|l| seat("lead_range", l, p)).transpose()?;
        let tokens = self.tokens.iter().map(|t| TokenConstraint::new(t.objective, t.before.clone(), t.after.clone()));
        Ok(Instance::builder(hands)
            .objectives(objectives)
            .tokens(tokens)
            .trump_suit(self.trump_suit)
            .first_lead(lead)
            .bounds(self.k, self.s)
            .build()?)
    }
}

pub fn parse_instance(text: &str) -> Result<(Instance, Metadata), FormatError> {
    let doc: InstanceDocument = serde_json::from_str(text)?;
    Ok((doc.to_instance()?, doc.meta))
}

pub fn write_instance(instance: &Instance, meta: Metadata) -> String {
    let mut text = serde_json::to_string_pretty(&InstanceDocument::from_instance(instance, meta)).expect("serializable");
    text.push('\n');
    text
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayDoc {
    pub player: usize,
    pub card: CardDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub lead: usize,
    pub tricks: Vec<Vec<PlayDoc>>,
}

impl WitnessDocument {
    pub fn from_sequence(sequence: &PlaySequence) -> Self {
        WitnessDocument {
            lead: sequence.first_lead + 1,
            tricks: sequence
                .tricks
                .iter()
                .map(|t| t.plays.iter().map(|pl| PlayDoc { player: pl.player + 1, card: pl.card.into() }).collect())
                .collect(),
        }
    }

    /// Seats are only checked for being 1-based here; range and rotation
    /// problems are left to the verifier.
    pub fn to_sequence(&self) -> Result<PlaySequence, FormatError> {
        let zero = |field, value: usize| value.checked_sub(1).ok_or(FormatError::Seat { field, value, players: 0 });
        let tricks = self
            .tricks
            .iter()
            .map(|t| {
                let plays = t
                    .iter()
                    .map(|pl| Ok(Play { player: zero("player", pl.player)?, card: pl.card.into() }))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                Ok(Trick::new(plays))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(PlaySequence::new(zero("lead", self.lead)?, tricks))
    }
}

pub fn parse_witness(text: &str) -> Result<PlaySequence, FormatError> {
    serde_json::from_str::<WitnessDocument>(text)?.to_sequence()
}

pub fn write_witness(sequence: &PlaySequence) -> String {
    let mut text = serde_json::to_string(&WitnessDocument::from_sequence(sequence)).expect("serializable");
    text.push('\n');
    text
}

/// Parses `p <vertices> <edges>` followed by `e <u> <v>` lines. Blank lines
/// and lines starting with `c` are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let syntax = |line, message: &str| FormatError::GraphSyntax { line, message: message.to_string() };
    let number = |line, word: Option<&str>| -> Result<usize, FormatError> {
        word.and_then(|w| w.parse().ok()).ok_or_else(|| syntax(line, "expected a number"))
    };
    let mut header = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let mut words = raw.split_whitespace();
        match words.next() {
            None => continue,
            Some(w) if w.starts_with('c') => continue,
            Some("p") if header.is_none() => header = Some((number(line, words.next())?, number(line, words.next())?)),
            Some("p") => return Err(syntax(line, "second header line")),
            Some("e") if header.is_some() => edges.push((number(line, words.next())?, number(line, words.next())?)),
            Some("e") => return Err(syntax(line, "edge before the header")),
            Some(_) => return Err(syntax(line, "expected `p`, `e` or `c`")),
        }
        if words.next().is_some() {
            return Err(syntax(line, "trailing input"));
        }
    }
    let (vertices, count) = header.ok_or_else(|| syntax(0, "missing `p` header"))?;
    if count != edges.len() {
        return Err(syntax(0, &format!("header declares {count} edges, found {}", edges.len())));
    }
    Ok(Graph::new(vertices, edges)?)
}

pub fn write_graph(graph: &Graph) -> String {
    let mut out = format!("p {} {}\n", graph.vertices(), graph.edge_count());
    for (u, v) in graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}
