use alloc::vec::Vec;

/// A delete-only sorted set of card values with predecessor queries.
///
/// Values live in a sorted array; deletions are lazy and skipped through
/// union-find style pointers, so a predecessor query costs one binary search
/// plus near-constant amortised pointer chasing.
#[derive(Clone, Debug)]
pub struct SortedHand {
    values: Vec<u32>,
    /// `skip[k]` points at a slot `k' <= k`; slot `k'` is settled when it is 0
    /// or `values[k' - 1]` is still present.
    skip: Vec<usize>,
    live: usize,
}

impl SortedHand {
    pub fn new(values: impl IntoIterator<Item = u32>) -> Self {
        let mut values: Vec<u32> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        let skip = (0..=values.len()).collect();
        let live = values.len();
        SortedHand { values, skip, live }
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    fn settle(&mut self, slot: usize) -> usize {
        let mut root = slot;
        while self.skip[root] != root {
            root = self.skip[root];
        }
        let mut k = slot;
        while self.skip[k] != root {
            let next = self.skip[k];
            self.skip[k] = root;
            k = next;
        }
        root
    }

    /// Largest present value strictly below `bound`.
    pub fn predecessor(&mut self, bound: u32) -> Option<u32> {
        let slot = self.values.partition_point(|&v| v < bound);
        match self.settle(slot) {
            0 => None,
            k => Some(self.values[k - 1]),
        }
    }

    pub fn max(&mut self) -> Option<u32> {
        match self.settle(self.values.len()) {
            0 => None,
            k => Some(self.values[k - 1]),
        }
    }

    pub fn contains(&self, value: u32) -> bool {
        match self.values.binary_search(&value) {
            Ok(i) => self.skip[i + 1] == i + 1,
            Err(_) => false,
        }
    }

    /// Removes `value`; returns whether it was present.
    pub fn remove(&mut self, value: u32) -> bool {
        let Ok(i) = self.values.binary_search(&value) else {
            return false;
        };
        if self.skip[i + 1] != i + 1 {
            return false;
        }
        self.skip[i + 1] = i;
        self.live -= 1;
        true
    }

    /// Present values below `bound`, largest first.
    pub fn descending_below(&mut self, bound: u32) -> Descending<'_> {
        Descending { hand: self, bound: Some(bound) }
    }

    pub fn descending(&mut self) -> Descending<'_> {
        Descending { hand: self, bound: None }
    }
}

pub struct Descending<'a> {
    hand: &'a mut SortedHand,
    /// `None` means "no bound yet": start from the very top.
    bound: Option<u32>,
}

impl Iterator for Descending<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let next = match self.bound {
            None => self.hand.max(),
            Some(b) => self.hand.predecessor(b),
        }?;
        self.bound = Some(next);
        Some(next)
    }
}
