//! Fixed-width element sets.
//!
//! Every ring handled here has at most [`MAX_ELEMENTS`] elements, so a subset of
//! the carrier fits in four machine words and can be copied around freely.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Hard upper bound on the number of ring elements.
pub const MAX_ELEMENTS: usize = 256;

const WORDS: usize = MAX_ELEMENTS / 64;

/// A subset of `{0, .., MAX_ELEMENTS - 1}` stored as a bitmask.
///
/// Ordering is numeric on the underlying 256-bit integer, so sorting a list of
/// sets gives the "sorted bitmask" order used for every deterministic listing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet([u64; WORDS]);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet([0; WORDS]);

    /// The set `{0, .., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        let mut words = [0u64; WORDS];
        for (w, word) in words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        ElemSet(words)
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(i);
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Inserts `i`, returning whether it was newly added.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.contains(i);
        self.0[i >> 6] |= 1 << (i & 63);
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        (*self & *other).is_empty()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.0,
            word: 0,
        }
    }

    /// Complement relative to `{0, .., n - 1}`.
    pub fn complement(&self, n: usize) -> ElemSet {
        !*self & ElemSet::full(n)
    }

    /// Raw words, least significant first.
    pub fn words(&self) -> [u64; WORDS] {
        self.0
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl IntoIterator for &ElemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Extend<usize> for ElemSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for i in iter {
            self.insert(i);
        }
    }
}

macro_rules! wordwise {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for ElemSet {
            type Output = ElemSet;

            fn $method(self, rhs: ElemSet) -> ElemSet {
                let mut out = [0u64; WORDS];
                for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(rhs.0.iter())) {
                    *o = a $op b;
                }
                ElemSet(out)
            }
        }
    };
}

wordwise!(BitOr, bitor, |);
wordwise!(BitAnd, bitand, &);

impl Sub for ElemSet {
    type Output = ElemSet;

    fn sub(self, rhs: ElemSet) -> ElemSet {
        self & !rhs
    }
}

impl Not for ElemSet {
    type Output = ElemSet;

    fn not(self) -> ElemSet {
        let mut out = self.0;
        for w in out.iter_mut() {
            *w = !*w;
        }
        ElemSet(out)
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as the ascending list of member indices.
impl serde::Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_complement() {
        assert_eq!(ElemSet::full(0), ElemSet::EMPTY);
        assert_eq!(ElemSet::full(70).len(), 70);
        assert_eq!(ElemSet::full(256).len(), 256);
        let s: ElemSet = [1, 3, 65].into_iter().collect();
        assert_eq!(s.complement(66).len(), 63);
        assert!(!s.complement(66).contains(65));
    }

    #[test]
    fn iteration_is_ascending() {
        let s: ElemSet = [200, 3, 64, 0, 63].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 63, 64, 200]);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn numeric_order() {
        let small: ElemSet = [0, 1, 2].into_iter().collect();
        let big = ElemSet::singleton(3);
        let huge = ElemSet::singleton(130);
        assert!(small < big);
        assert!(big < huge);
    }
}
