#![allow(dead_code)]

use crew_core::{card, Card, GameState, Instance, Play, Status, TokenConstraint, Trick};

/// splitmix64, enough to turn a proptest seed into a deal.
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.next() % 100 < percent
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            items.swap(i, self.below(i + 1));
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub players: (usize, usize),
    pub hand: (usize, usize),
    pub values: u32,
    pub suits: u32,
    pub objectives: usize,
    pub uneven: bool,
    pub trump: bool,
    pub tokens: bool,
    pub lead: bool,
}

impl Shape {
    pub const TINY: Shape = Shape {
        players: (1, 3),
        hand: (1, 3),
        values: 4,
        suits: 3,
        objectives: 3,
        uneven: true,
        trump: true,
        tokens: true,
        lead: true,
    };

    pub fn single_suit(players: usize, hand: usize, objectives: usize) -> Shape {
        Shape {
            players: (1, players),
            hand: (1, hand),
            values: (players * hand * 2) as u32,
            suits: 1,
            objectives,
            uneven: true,
            trump: false,
            tokens: false,
            lead: true,
        }
    }
}

/// A random valid instance of the given shape.
pub fn deal(shape: Shape, seed: u64) -> Instance {
    let mut rng = Mix(seed);
    let p = rng.between(shape.players.0, shape.players.1);
    let mut sizes: Vec<usize> = vec![rng.between(shape.hand.0, shape.hand.1); p];
    if shape.uneven {
        for s in &mut sizes {
            *s = rng.between(shape.hand.0, shape.hand.1);
        }
    }
    let mut deck: Vec<Card> = (1..=shape.suits).flat_map(|s| (1..=shape.values).map(move |v| card(v, s))).collect();
    rng.shuffle(&mut deck);
    let total: usize = sizes.iter().sum::<usize>().min(deck.len());
    deck.truncate(total);
    let mut hands = Vec::with_capacity(p);
    let mut at = 0;
    for &s in &sizes {
        let end = (at + s).min(deck.len());
        hands.push(deck[at..end].to_vec());
        at = end;
    }
    let trump = (shape.trump && rng.chance(40)).then(|| rng.between(1, shape.suits as usize) as u32);
    let mut targets: Vec<Card> = deck.iter().copied().filter(|c| Some(c.suit) != trump).collect();
    rng.shuffle(&mut targets);
    targets.truncate(rng.between(0, shape.objectives.min(targets.len())));
    let mut b = Instance::builder(hands).trump_suit(trump);
    for &c in &targets {
        b = b.objective(c, rng.below(p));
    }
    let l = targets.len();
    if shape.tokens && l >= 2 && rng.chance(50) {
        for _ in 0..rng.between(1, 2) {
            let o = rng.below(l);
            let other = (o + rng.between(1, l - 1)) % l;
            let token = if rng.chance(50) {
                TokenConstraint::new(o, vec![other], vec![])
            } else {
                TokenConstraint::new(o, vec![], vec![other])
            };
            b = b.token(token);
        }
    }
    if shape.lead && rng.chance(50) {
        b = b.first_lead(Some(rng.below(p)));
    }
    b.build().expect("generated instance is valid")
}

/// Plain game-tree search through the rules engine, no pruning or memo.
pub fn naive_decide(instance: &Instance) -> bool {
    fn search(instance: &Instance, state: &GameState) -> bool {
        match state.status() {
            Status::Won => return true,
            Status::Lost(_) => return false,
            Status::InProgress => {}
        }
        let p = instance.players();
        let leads: Vec<usize> = match state.lead() {
            Some(l) => vec![l],
            None => (0..p).collect(),
        };
        leads.into_iter().any(|lead| build(instance, state, lead, &mut Vec::new()))
    }

    fn build(instance: &Instance, state: &GameState, lead: usize, plays: &mut Vec<Play>) -> bool {
        let p = instance.players();
        if plays.len() == p {
            let next = state.apply_trick(instance, &Trick::new(plays.clone())).expect("legal trick");
            return search(instance, &next);
        }
        let seat = (lead + plays.len()) % p;
        let led = plays.first().map(|pl| pl.card);
        for c in state.legal_plays(seat, led).expect("seat has cards") {
            plays.push(Play { player: seat, card: c });
            let found = build(instance, state, lead, plays);
            plays.pop();
            if found {
                return true;
            }
        }
        false
    }

    search(instance, &GameState::new(instance))
}
