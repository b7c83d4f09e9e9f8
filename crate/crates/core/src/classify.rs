use core::fmt;

use crate::instance::Instance;

/// The structural class an instance falls into, most specific first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceClass {
    /// Every card has value 1.
    SingleValue,
    /// One suit, and every objective card sits in its owner's hand.
    SingleSuitOwned,
    /// One suit.
    SingleSuit,
    General,
}

impl InstanceClass {
    pub fn label(self) -> &'static str {
        match self {
            InstanceClass::SingleValue => "SINGLE_VALUE",
            InstanceClass::SingleSuitOwned => "SINGLE_SUIT_OWNED",
            InstanceClass::SingleSuit => "SINGLE_SUIT",
            InstanceClass::General => "GENERAL",
        }
    }
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// True when the instance carries neither tokens nor a trump suit.
pub fn is_plain(instance: &Instance) -> bool {
    instance.tokens().is_empty() && instance.trump_suit().is_none()
}

pub fn is_single_value(instance: &Instance) -> bool {
    instance.cards().all(|(c, _)| c.value == 1)
}

pub fn is_single_suit(instance: &Instance) -> bool {
    let mut suits = instance.cards().map(|(c, _)| c.suit);
    match suits.next() {
        None => true,
        Some(first) => suits.all(|s| s == first),
    }
}

/// Every objective card lies in its owner's hand.
pub fn objectives_owned(instance: &Instance) -> bool {
    instance.objectives().iter().all(|o| instance.holder_of(o.card) == Some(o.owner))
}

/// Tokens or trump always classify as [`InstanceClass::General`]; the
/// specialised procedures assume neither.
pub fn classify(instance: &Instance) -> InstanceClass {
    if !is_plain(instance) {
        InstanceClass::General
    } else if is_single_value(instance) {
        InstanceClass::SingleValue
    } else if is_single_suit(instance) {
        if objectives_owned(instance) {
            InstanceClass::SingleSuitOwned
        } else {
            InstanceClass::SingleSuit
        }
    } else {
        InstanceClass::General
    }
}
