use std::fmt;

use crate::Element;

/// A finite set of carrier indices, packed into a single word.
///
/// Carriers that need this are capped far below 64 elements: the pair space
/// over a structure of size `n` has `n * 2^n` entries.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const MAX_ELEMENTS: usize = 64;

    pub const fn empty() -> Self {
        ElemSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(x: Element) -> Self {
        ElemSet(1 << x)
    }

    pub fn contains(self, x: Element) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: Element) {
        self.0 |= 1 << x;
    }

    pub fn remove(&mut self, x: Element) {
        self.0 &= !(1 << x);
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Element> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let x = bits.trailing_zeros() as Element;
            bits &= bits - 1;
            Some(x)
        })
    }

    /// Lexicographic comparison of the sorted member sequences.
    pub fn cmp_sequence(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<Element> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
