//! Hamiltonian-path instances compiled into game instances.
//!
//! Vertex `v` (1-based) becomes seat `v - 1` and owns suit `v`. Each of its
//! neighbors holds one low card of suit `v`; the seat itself holds the top
//! card of suit `v` and must win it. Junk cards fill every hand to `|V|`
//! cards, so each trick has to complete an objective, and a trick of suit
//! `v` can only hand the lead to a neighbor of `v`.

mod graph;
mod hamiltonian;

pub use graph::{Graph, GraphError};
pub use hamiltonian::{hp_bruteforce, path_to_witness, HpError, DEFAULT_HP_LIMIT};

use alloc::vec::Vec;

use thiserror::Error;

use crate::card::Card;
use crate::instance::{Instance, Objective, TokenConstraint};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("reduction needs at least {needed} vertices, graph has {vertices}")]
    TooFewVertices { needed: usize, vertices: usize },
    #[error("trump count must be at least 1")]
    NoTrumps,
}

fn require(graph: &Graph, needed: usize) -> Result<(), ReduceError> {
    if graph.vertices() < needed {
        return Err(ReduceError::TooFewVertices { needed, vertices: graph.vertices() });
    }
    Ok(())
}

fn base_deal(graph: &Graph) -> (Vec<Vec<Card>>, Vec<Objective>) {
    let n = graph.vertices();
    let mut hands: Vec<Vec<Card>> = alloc::vec![Vec::with_capacity(n); n];
    let mut objectives = Vec::with_capacity(n);
    for v in 1..=n {
        let suit = v as u32;
        for (k, &u) in graph.neighbors(v).iter().enumerate() {
            hands[u - 1].push(Card::new(k as u32 + 1, suit));
        }
        let target = Card::new(graph.degree(v) as u32 + 1, suit);
        hands[v - 1].push(target);
        objectives.push(Objective { card: target, owner: v - 1 });
    }
    for v in 1..=n {
        let junk = n - graph.degree(v) - 1;
        hands[v - 1].extend((1..=junk as u32).map(|value| Card::new(value, (n + v) as u32)));
    }
    (hands, objectives)
}

/// The base reduction: `|V|` seats holding `|V|` cards each, one objective per seat.
pub fn reduce_hp(graph: &Graph) -> Result<Instance, ReduceError> {
    require(graph, 1)?;
    let (hands, objectives) = base_deal(graph);
    Ok(Instance::builder(hands).objectives(objectives).build().expect("reduction output is valid"))
}

/// The base reduction plus a trump suit `2|V| + 1`, dealt `count` cards to
/// every seat but the first, values rising in vertex order.
pub fn reduce_hp_trump(graph: &Graph, count: usize) -> Result<Instance, ReduceError> {
    require(graph, 2)?;
    if count == 0 {
        return Err(ReduceError::NoTrumps);
    }
    let n = graph.vertices();
    let trump = 2 * n as u32 + 1;
    let (mut hands, objectives) = base_deal(graph);
    let mut next = 1;
    for hand in hands.iter_mut().skip(1) {
        hand.extend((next..next + count as u32).map(|value| Card::new(value, trump)));
        next += count as u32;
    }
    Ok(Instance::builder(hands).objectives(objectives).trump_suit(Some(trump)).build().expect("reduction output is valid"))
}

/// The base reduction plus one seat that must finish last.
///
/// The new seat holds the top card of a fresh suit `2|V| + 1`, with an
/// objective on it that every other objective must precede; each original
/// seat `v` holds card `v` of that suit. The new seat's junk comes from suit
/// `2|V| + 2`, so every hand has `|V| + 1` cards.
pub fn reduce_hp_tokens(graph: &Graph) -> Result<Instance, ReduceError> {
    require(graph, 1)?;
    let n = graph.vertices();
    let extra = 2 * n as u32 + 1;
    let (mut hands, mut objectives) = base_deal(graph);
    for (v, hand) in hands.iter_mut().enumerate() {
        hand.push(Card::new(v as u32 + 1, extra));
    }
    let target = Card::new(n as u32 + 1, extra);
    let mut last = alloc::vec![target];
    last.extend((1..=n as u32).map(|value| Card::new(value, extra + 1)));
    hands.push(last);
    objectives.push(Objective { card: target, owner: n });
    let token = TokenConstraint::new(n, (0..n).collect(), Vec::new());
    Ok(Instance::builder(hands).objectives(objectives).token(token).build().expect("reduction output is valid"))
}
