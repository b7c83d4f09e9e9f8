use alloc::vec::Vec;

use crate::classify::{is_plain, is_single_value};
use crate::instance::Instance;
use crate::rules::{Play, Trick};
use crate::solvers::{wrong_class, SolveError, SolveReport, SolveStats, SolverId};
use crate::verify::PlaySequence;

/// Decides an instance in which every card has value 1.
///
/// Every suit holds a single card, so nobody can follow suit and the first
/// lead takes every trick. The instance is winnable iff all objectives belong
/// to one player, that player may lead, and every hand lasts as many tricks
/// as the largest number of objective cards any single hand holds.
pub fn solve_single_value(instance: &Instance, want_witness: bool) -> Result<SolveReport, SolveError> {
    const ID: SolverId = SolverId::SingleValue;
    if !is_plain(instance) {
        return Err(wrong_class(ID, "tokens and trump are not supported"));
    }
    if !is_single_value(instance) {
        return Err(wrong_class(ID, "every card must have value 1"));
    }
    let no = |tricks| Ok(SolveReport::new(false, None, ID, SolveStats { nodes: 0, tricks }));

    let objectives = instance.objectives();
    let Some(first) = objectives.first() else {
        let witness = PlaySequence::new(instance.first_lead().unwrap_or(0), Vec::new());
        return Ok(SolveReport::new(true, want_witness.then_some(witness), ID, SolveStats::default()));
    };
    let owner = first.owner;
    if objectives.iter().any(|o| o.owner != owner) {
        return no(0);
    }
    if instance.first_lead().is_some_and(|lead| lead != owner) {
        return no(0);
    }

    let p = instance.players();
    let mut held = alloc::vec![0usize; p];
    for o in objectives {
        held[instance.holder_of(o.card).expect("validated instance")] += 1;
    }
    let needed = held.iter().copied().max().unwrap_or(0);
    let shortest = instance.hands().iter().map(Vec::len).min().unwrap_or(0);
    if shortest == 0 || needed > shortest {
        return no(0);
    }

    let witness = want_witness.then(|| {
        // each seat plays its objective cards first, then anything
        let schedules: Vec<Vec<_>> = instance
            .hands()
            .iter()
            .map(|hand| {
                let (mut targets, rest): (Vec<_>, Vec<_>) =
                    hand.iter().copied().partition(|&c| instance.objective_for(c).is_some());
                targets.extend(rest);
                targets
            })
            .collect();
        let tricks = (0..needed)
            .map(|t| Trick::arranged(owner, p, (0..p).map(|seat| Play { player: seat, card: schedules[seat][t] })))
            .collect();
        PlaySequence::new(owner, tricks)
    });
    Ok(SolveReport::new(true, witness, ID, SolveStats { nodes: 0, tricks: needed }))
}
