use core::fmt;

/// A single playing card: a value within its suit.
///
/// Values and suits both start at 1. Cards order by suit first, then value,
/// which is the order hands are kept in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card {
    pub suit: u32,
    pub value: u32,
}

impl Card {
    pub const fn new(value: u32, suit: u32) -> Self {
        Card { suit, value }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.value, self.suit)
    }
}

/// Shorthand for `Card::new(value, suit)`, mirroring the usual `(x, y)` notation.
pub const fn card(value: u32, suit: u32) -> Card {
    Card::new(value, suit)
}
