use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::card::Card;
use crate::classify::{is_plain, is_single_suit};
use crate::instance::Instance;
use crate::rules::{GameState, Play, Trick};
use crate::solvers::{wrong_class, SolveError, SolveReport, SolveStats, SolverId};
use crate::verify::PlaySequence;

/// Cards each seat keeps back to win the tricks it still needs.
///
/// A seat wins a trick with each objective card of its own that it holds,
/// and with extra non-objective cards wherever those are not enough to beat
/// the objective cards other seats must feed it: the `k`-th highest card fed
/// by any one holder needs `k` winners above it. The extras are always the
/// seat's highest non-objective cards, as few as possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReservePlan {
    counts: Vec<usize>,
    reserved: Vec<Vec<Card>>,
}

impl ReservePlan {
    /// Plan for the position `state` of `instance`, or `None` when some seat
    /// lacks the cards to beat what it must be fed.
    pub fn compute(instance: &Instance, state: &GameState) -> Option<Self> {
        let position = Position::new(instance, state);
        let extras = position.extra_winners()?;
        let reserved: Vec<Vec<Card>> = extras
            .iter()
            .map(|values| values.iter().map(|&v| Card::new(v, position.suit)).collect())
            .collect();
        Some(ReservePlan { counts: reserved.iter().map(Vec::len).collect(), reserved })
    }

    /// The number of extra winning cards `seat` keeps.
    pub fn count(&self, seat: usize) -> usize {
        self.counts[seat]
    }

    /// The cards `seat` keeps, highest first.
    pub fn reserved(&self, seat: usize) -> &[Card] {
        &self.reserved[seat]
    }
}

/// Decides single-suit instances with objective cards anywhere.
///
/// With one suit every card is always playable and the highest card takes
/// the trick, so tricks can be played in any order. A solution is a set of
/// winning cards, one per trick, plus for every other seat one lower card
/// per trick, objective cards going only to their owner's tricks. The
/// winning cards are each seat's own objective cards and its [`ReservePlan`].
/// Given those, every seat fills the tricks it does not win independently:
/// fed objective cards take the lowest tricks that beat them, and the
/// seat's lowest free cards fill the remaining tricks in order.
pub fn solve_single_suit(instance: &Instance, want_witness: bool) -> Result<SolveReport, SolveError> {
    const ID: SolverId = SolverId::SingleSuit;
    if !is_plain(instance) {
        return Err(wrong_class(ID, "tokens and trump are not supported"));
    }
    if !is_single_suit(instance) {
        return Err(wrong_class(ID, "all cards must share one suit"));
    }
    if instance.objectives().is_empty() {
        let witness = PlaySequence::new(instance.first_lead().unwrap_or(0), Vec::new());
        return Ok(SolveReport::new(true, want_witness.then_some(witness), ID, SolveStats::default()));
    }

    let position = Position::new(instance, &GameState::new(instance));
    let no = |nodes| Ok(SolveReport::new(false, None, ID, SolveStats { nodes, tricks: 0 }));
    let Some(extras) = position.extra_winners() else {
        return no(0);
    };
    let Some(layout) = position.fill(&extras) else {
        return no(layout_size(&position, &extras) as u64);
    };
    let nodes = layout.winners.len() as u64;
    let witness = layout.into_witness(instance, &position);
    let stats = SolveStats { nodes, tricks: witness.len() };
    Ok(SolveReport::new(true, want_witness.then_some(witness), ID, stats))
}

fn layout_size(position: &Position, extras: &[Vec<u32>]) -> usize {
    position.own.iter().map(Vec::len).sum::<usize>() + extras.iter().map(Vec::len).sum::<usize>()
}

/// A single-suit position reduced to card values.
struct Position {
    suit: u32,
    /// Open objective cards each seat owns and holds, highest first.
    own: Vec<Vec<u32>>,
    /// Open objective cards owned by `.0` and held by `.1 != .0`, highest first.
    fed: BTreeMap<(usize, usize), Vec<u32>>,
    /// Non-objective cards in each hand, highest first.
    spare: Vec<Vec<u32>>,
}

impl Position {
    fn new(instance: &Instance, state: &GameState) -> Self {
        let p = instance.players();
        let mut own = alloc::vec![Vec::new(); p];
        let mut fed: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
        let mut spare = alloc::vec![Vec::new(); p];
        let mut suit = 0;
        for seat in 0..p {
            for &c in state.hand(seat) {
                suit = c.suit;
                match instance.objective_for(c) {
                    None => spare[seat].push(c.value),
                    Some(o) if state.completed()[o].is_some() => {}
                    Some(o) => {
                        let owner = instance.objectives()[o].owner;
                        if owner == seat {
                            own[seat].push(c.value);
                        } else {
                            fed.entry((owner, seat)).or_default().push(c.value);
                        }
                    }
                }
            }
        }
        let desc = |v: &mut Vec<u32>| v.sort_unstable_by(|a, b| b.cmp(a));
        own.iter_mut().chain(spare.iter_mut()).chain(fed.values_mut()).for_each(desc);
        Position { suit, own, fed, spare }
    }

    fn players(&self) -> usize {
        self.own.len()
    }

    /// The fewest top non-objective cards per seat that, with its own
    /// objective cards, beat every holder's fed cards rank for rank.
    fn extra_winners(&self) -> Option<Vec<Vec<u32>>> {
        let mut needed = alloc::vec![0usize; self.players()];
        for (&(owner, _), cards) in &self.fed {
            let above = |list: &[u32], v: u32| list.partition_point(|&w| w > v);
            for (rank, &v) in cards.iter().enumerate() {
                let missing = (rank + 1).saturating_sub(above(&self.own[owner], v));
                if missing > above(&self.spare[owner], v) {
                    return None;
                }
                needed[owner] = needed[owner].max(missing);
            }
        }
        Some(needed.iter().enumerate().map(|(q, &k)| self.spare[q][..k].to_vec()).collect())
    }

    /// Assigns every seat a card in each trick it does not win.
    fn fill(&self, extras: &[Vec<u32>]) -> Option<Layout> {
        let p = self.players();
        let by_owner: Vec<Vec<u32>> = (0..p).map(|q| self.own[q].iter().chain(&extras[q]).copied().collect()).collect();
        let mut winners: Vec<(u32, usize)> =
            by_owner.iter().enumerate().flat_map(|(q, vs)| vs.iter().map(move |&v| (v, q))).collect();
        winners.sort_unstable_by(|a, b| b.cmp(a));
        let index: BTreeMap<u32, usize> = winners.iter().enumerate().map(|(t, &(v, _))| (v, t)).collect();

        let mut cards = alloc::vec![alloc::vec![0u32; p]; winners.len()];
        for (t, &(v, q)) in winners.iter().enumerate() {
            cards[t][q] = v;
        }
        for r in 0..p {
            let mut free: BTreeSet<usize> = (0..winners.len()).filter(|&t| winners[t].1 != r).collect();
            for (&(q, _), feed) in self.fed.iter().filter(|(&(_, holder), _)| holder == r) {
                let mut open: BTreeSet<u32> = by_owner[q].iter().copied().collect();
                for &v in feed {
                    let slot = *open.range(v + 1..).next()?;
                    open.remove(&slot);
                    let t = index[&slot];
                    free.remove(&t);
                    cards[t][r] = v;
                }
            }
            let kept = extras[r].len();
            let mut pool = self.spare[r][kept..].iter().rev();
            // free tricks from the lowest winner up
            for &t in free.iter().rev() {
                let v = *pool.next()?;
                if v > winners[t].0 {
                    return None;
                }
                cards[t][r] = v;
            }
        }
        Some(Layout { winners, cards })
    }
}

/// Tricks ordered by winning card, highest first.
struct Layout {
    winners: Vec<(u32, usize)>,
    cards: Vec<Vec<u32>>,
}

impl Layout {
    fn into_witness(self, instance: &Instance, position: &Position) -> PlaySequence {
        let p = position.players();
        let suit = position.suit;
        let scores_objective = |t: usize| self.cards[t].iter().any(|&v| instance.objective_for(Card::new(v, suit)).is_some());
        let kept: Vec<usize> = (0..self.winners.len()).filter(|&t| scores_objective(t)).collect();
        let first_lead = instance.first_lead().unwrap_or_else(|| kept.first().map_or(0, |&t| self.winners[t].1));
        let mut lead = first_lead;
        let mut tricks = Vec::with_capacity(kept.len());
        for t in kept {
            let plays = (0..p).map(|seat| Play { player: seat, card: Card::new(self.cards[t][seat], suit) });
            tricks.push(Trick::arranged(lead, p, plays));
            lead = self.winners[t].1;
        }
        PlaySequence::new(first_lead, tricks)
    }
}
