use alloc::vec::Vec;

use crate::card::Card;
use crate::classify::{is_plain, is_single_suit, objectives_owned};
use crate::instance::Instance;
use crate::rules::{Play, Trick};
use crate::solvers::hand::SortedHand;
use crate::solvers::{wrong_class, SolveError, SolveReport, SolveStats, SolverId};
use crate::verify::PlaySequence;

/// Greedy decision for one suit where every objective card is in its owner's hand.
///
/// Only the owner's own card can take an objective trick, so each objective
/// costs exactly one trick. Objectives are taken in descending card order;
/// for each, the owner plays the objective card and every other seat plays
/// its highest non-objective card below it. The instance is winnable iff no
/// seat ever runs out of such a card.
pub fn solve_single_suit_owned(instance: &Instance, want_witness: bool) -> Result<SolveReport, SolveError> {
    const ID: SolverId = SolverId::SingleSuitOwned;
    if !is_plain(instance) {
        return Err(wrong_class(ID, "tokens and trump are not supported"));
    }
    if !is_single_suit(instance) {
        return Err(wrong_class(ID, "all cards must share one suit"));
    }
    if !objectives_owned(instance) {
        return Err(wrong_class(ID, "every objective card must be in its owner's hand"));
    }

    let p = instance.players();
    let mut order: Vec<(u32, usize)> = instance.objectives().iter().map(|o| (o.card.value, o.owner)).collect();
    order.sort_unstable_by(|a, b| b.cmp(a));
    let Some(&(_, first_owner)) = order.first() else {
        let witness = PlaySequence::new(instance.first_lead().unwrap_or(0), Vec::new());
        return Ok(SolveReport::new(true, want_witness.then_some(witness), ID, SolveStats::default()));
    };
    let suit = instance.objectives()[0].card.suit;

    let mut spare: Vec<SortedHand> = instance
        .hands()
        .iter()
        .map(|hand| SortedHand::new(hand.iter().filter(|&&c| instance.objective_for(c).is_none()).map(|c| c.value)))
        .collect();

    let first_lead = instance.first_lead().unwrap_or(first_owner);
    let mut lead = first_lead;
    let mut tricks = Vec::with_capacity(if want_witness { order.len() } else { 0 });
    let mut plays = Vec::with_capacity(p);
    for (done, &(value, owner)) in order.iter().enumerate() {
        plays.clear();
        for (seat, hand) in spare.iter_mut().enumerate() {
            let card = if seat == owner {
                value
            } else {
                match hand.predecessor(value) {
                    Some(v) => v,
                    None => return Ok(SolveReport::new(false, None, ID, SolveStats { nodes: done as u64, tricks: done })),
                }
            };
            plays.push(Play { player: seat, card: Card::new(card, suit) });
        }
        for pl in plays.iter().filter(|pl| pl.player != owner) {
            spare[pl.player].remove(pl.card.value);
        }
        if want_witness {
            tricks.push(Trick::arranged(lead, p, plays.iter().copied()));
        }
        lead = owner;
    }

    let stats = SolveStats { nodes: order.len() as u64, tricks: order.len() };
    let witness = want_witness.then(|| PlaySequence::new(first_lead, tricks));
    Ok(SolveReport::new(true, witness, ID, stats))
}
