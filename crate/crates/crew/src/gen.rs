//! Seeded instance and graph generators, one per instance class.
//!
//! The same parameters and seed always give the same instance.

use crew_core::reduce::Graph;
use crew_core::{card, Card, Instance, TokenConstraint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    SingleValue,
    SsOwned,
    SingleSuit,
    General,
}

impl Class {
    pub const ALL: [Class; 4] = [Class::SingleValue, Class::SsOwned, Class::SingleSuit, Class::General];

    pub fn label(self) -> &'static str {
        match self {
            Class::SingleValue => "single-value",
            Class::SsOwned => "ss-owned",
            Class::SingleSuit => "single-suit",
            Class::General => "general",
        }
    }
}

impl std::str::FromStr for Class {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        Class::ALL.into_iter().find(|c| c.label() == s).ok_or_else(|| GenError::UnknownClass(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GenError {
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("need at least one player")]
    NoPlayers,
    #[error("{cards} cards cannot give each of {players} players a card")]
    TooFewCards { cards: usize, players: usize },
    #[error("{objectives} objectives need at least as many eligible cards, found {cards}")]
    TooManyObjectives { objectives: usize, cards: usize },
    #[error("{cards} cards do not fit in {suits} suits of {values} values")]
    DeckTooSmall { cards: usize, suits: u32, values: u32 },
    #[error("tokens need at least two objectives")]
    TokensNeedObjectives,
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
}

/// Size parameters shared by every class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub players: usize,
    pub cards: usize,
    pub objectives: usize,
    /// Suits for the general class; ignored elsewhere.
    pub suits: u32,
    /// General class only: add a trump suit.
    pub trump: bool,
    /// General class only: number of token constraints.
    pub tokens: usize,
}

impl Params {
    pub fn new(players: usize, cards: usize, objectives: usize) -> Self {
        Params { players, cards, objectives, suits: 4, trump: false, tokens: 0 }
    }
}

pub fn instance(class: Class, params: &Params, seed: u64) -> Result<Instance, GenError> {
    let p = params.players;
    if p == 0 {
        return Err(GenError::NoPlayers);
    }
    if params.cards < p {
        return Err(GenError::TooFewCards { cards: params.cards, players: p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match class {
        Class::SingleValue => {
            let deck = (1..=params.cards as u32).map(|s| card(1, s)).collect();
            let hands = deal(&mut rng, deck, p);
            let owner = rng.random_range(0..p);
            // one owner half the time, so both answers are common
            let one_owner = rng.random_bool(0.5);
            with_objectives(&mut rng, hands, params.objectives, None, |rng, _| {
                if one_owner {
                    owner
                } else {
                    rng.random_range(0..p)
                }
            })
        }
        Class::SsOwned | Class::SingleSuit => {
            let deck = (1..=params.cards as u32).map(|v| card(v, 1)).collect();
            let hands = deal(&mut rng, deck, p);
            let holder = holders(&hands);
            with_objectives(&mut rng, hands, params.objectives, None, |rng, c| match class {
                Class::SsOwned => holder(c),
                _ => rng.random_range(0..p),
            })
        }
        Class::General => general(&mut rng, params),
    }
}

fn general(rng: &mut ChaCha8Rng, params: &Params) -> Result<Instance, GenError> {
    let p = params.players;
    let trump = params.trump.then_some(params.suits + 1);
    let suits = params.suits + params.trump as u32;
    let values = (params.cards as u32).div_ceil(suits.max(1));
    if suits == 0 || (suits * values) < params.cards as u32 {
        return Err(GenError::DeckTooSmall { cards: params.cards, suits, values });
    }
    let mut deck: Vec<Card> = (1..=suits).flat_map(|s| (1..=values).map(move |v| card(v, s))).collect();
    deck.shuffle(rng);
    deck.truncate(params.cards);
    let hands = deal(rng, deck, p);
    let inst = with_objectives(rng, hands, params.objectives, trump, |rng, _| rng.random_range(0..p))?;
    if params.tokens == 0 {
        return Ok(inst);
    }
    let l = inst.objectives().len();
    if l < 2 {
        return Err(GenError::TokensNeedObjectives);
    }
    let tokens: Vec<TokenConstraint> = (0..params.tokens)
        .map(|_| {
            let o = rng.random_range(0..l);
            let other = (o + rng.random_range(1..l)) % l;
            if rng.random_bool(0.5) {
                TokenConstraint::new(o, vec![other], vec![])
            } else {
                TokenConstraint::new(o, vec![], vec![other])
            }
        })
        .collect();
    Ok(inst.to_builder().tokens(tokens).build().expect("generated tokens are valid"))
}

/// Shuffles and deals round-robin, so hand sizes differ by at most one.
fn deal(rng: &mut ChaCha8Rng, mut deck: Vec<Card>, players: usize) -> Vec<Vec<Card>> {
    deck.shuffle(rng);
    let mut hands = vec![Vec::with_capacity(deck.len() / players + 1); players];
    for (i, c) in deck.into_iter().enumerate() {
        hands[i % players].push(c);
    }
    hands
}

fn holders(hands: &[Vec<Card>]) -> impl Fn(Card) -> usize {
    let map: std::collections::HashMap<Card, usize> =
        hands.iter().enumerate().flat_map(|(s, h)| h.iter().map(move |&c| (c, s))).collect();
    move |c| map[&c]
}

fn with_objectives(
    rng: &mut ChaCha8Rng,
    hands: Vec<Vec<Card>>,
    count: usize,
    trump: Option<u32>,
    mut owner: impl FnMut(&mut ChaCha8Rng, Card) -> usize,
) -> Result<Instance, GenError> {
    let mut eligible: Vec<Card> = hands.iter().flatten().copied().filter(|c| Some(c.suit) != trump).collect();
    if count > eligible.len() {
        return Err(GenError::TooManyObjectives { objectives: count, cards: eligible.len() });
    }
    eligible.sort_unstable();
    let (chosen, _) = eligible.partial_shuffle(rng, count);
    let chosen = chosen.to_vec();
    let mut b = Instance::builder(hands).trump_suit(trump);
    for c in chosen {
        let o = owner(rng, c);
        b = b.objective(c, o);
    }
    Ok(b.build().expect("generated instance is valid"))
}

/// A winnable one-suit instance whose winning line plays every card.
///
/// Values `1..=cards` are dealt in blocks of `players`; one seat holds the
/// top card of every block and owns it, so each block forms one trick. The
/// seat labels are shuffled by `seed`.
pub fn full_line(players: usize, cards: usize, seed: u64) -> Result<Instance, GenError> {
    if players == 0 {
        return Err(GenError::NoPlayers);
    }
    if cards < players {
        return Err(GenError::TooFewCards { cards, players });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seats: Vec<usize> = (0..players).collect();
    seats.shuffle(&mut rng);
    let blocks = cards / players;
    let mut hands = vec![Vec::with_capacity(blocks); players];
    for v in 1..=(blocks * players) as u32 {
        hands[seats[(v as usize - 1) % players]].push(card(v, 1));
    }
    let top = seats[players - 1];
    let owned: Vec<Card> = hands[top].clone();
    let mut b = Instance::builder(hands);
    for c in owned {
        b = b.objective(c, top);
    }
    Ok(b.build().expect("generated instance is valid"))
}

/// An Erdős–Rényi graph: every pair is an edge with probability `edge_prob`.
pub fn graph(vertices: usize, edge_prob: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(GenError::Probability(edge_prob));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=vertices {
        for v in u + 1..=vertices {
            if rng.random_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(vertices, edges).expect("generated edges are simple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crew_core::{classify, InstanceClass};

    #[test]
    fn classes_match_their_labels() {
        let params = Params::new(4, 40, 6);
        let expect = [
            (Class::SingleValue, InstanceClass::SingleValue),
            (Class::SsOwned, InstanceClass::SingleSuitOwned),
            (Class::General, InstanceClass::General),
        ];
        for (class, label) in expect {
            for seed in 0..20 {
                assert_eq!(classify(&instance(class, &params, seed).unwrap()), label, "{class:?}");
            }
        }
        for seed in 0..20 {
            let inst = instance(Class::SingleSuit, &params, seed).unwrap();
            assert!(matches!(classify(&inst), InstanceClass::SingleSuit | InstanceClass::SingleSuitOwned));
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let params = Params { trump: true, tokens: 2, ..Params::new(3, 20, 4) };
        assert_eq!(instance(Class::General, &params, 9), instance(Class::General, &params, 9));
        assert_ne!(instance(Class::General, &params, 9), instance(Class::General, &params, 10));
        assert_eq!(graph(6, 0.5, 1), graph(6, 0.5, 1));
    }

    #[test]
    fn infeasible_parameters() {
        assert_eq!(instance(Class::SingleSuit, &Params::new(3, 5, 6), 0), Err(GenError::TooManyObjectives { objectives: 6, cards: 5 }));
        assert_eq!(instance(Class::SingleSuit, &Params::new(0, 5, 1), 0), Err(GenError::NoPlayers));
        assert!(matches!(instance(Class::SingleSuit, &Params::new(6, 5, 1), 0), Err(GenError::TooFewCards { .. })));
        let tokens = Params { tokens: 1, ..Params::new(2, 6, 1) };
        assert_eq!(instance(Class::General, &tokens, 0), Err(GenError::TokensNeedObjectives));
        assert_eq!(graph(3, 1.5, 0), Err(GenError::Probability(1.5)));
    }

    #[test]
    fn full_line_plays_every_card() {
        let inst = full_line(4, 41, 3).unwrap();
        assert_eq!(inst.card_count(), 40);
        let report = crew_core::solve(&inst, &Default::default()).unwrap();
        assert!(report.decision);
        assert_eq!(report.witness.unwrap().plays(), 40);
    }

    #[test]
    fn graph_has_no_loops() {
        let g = graph(5, 0.5, 1).unwrap();
        assert!(g.edges().all(|(u, v)| u < v));
        assert_eq!(graph(4, 1.0, 3).unwrap().edge_count(), 6);
        assert_eq!(graph(4, 0.0, 3).unwrap().edge_count(), 0);
    }
}
