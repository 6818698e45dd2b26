//! Dense element identifiers and a small bitset over them.
//!
//! Elements of a ground set are dense integers `0..n`, assigned when an
//! instance is loaded. Mapping back to user-facing labels (edge endpoints,
//! job ids, ...) is kept in the instance itself.

use serde::{Deserialize, Serialize};

/// An element of a matroid ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(pub u32);

impl Element {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fixed-capacity bitset over `0..n` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSet {
    words: Vec<u64>,
    len: usize,
}

impl DenseSet {
    pub fn new(capacity: usize) -> Self {
        DenseSet { words: vec![0; capacity.div_ceil(64)], len: 0 }
    }

    #[inline]
    pub fn contains(&self, e: Element) -> bool {
        let i = e.index();
        match self.words.get(i / 64) {
            Some(w) => (w >> (i % 64)) & 1 == 1,
            None => false,
        }
    }

    #[inline]
    pub fn insert(&mut self, e: Element) -> bool {
        let i = e.index();
        let mask = 1u64 << (i % 64);
        let fresh = self.words[i / 64] & mask == 0;
        self.words[i / 64] |= mask;
        self.len += fresh as usize;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, e: Element) -> bool {
        let i = e.index();
        let mask = 1u64 << (i % 64);
        let present = self.words[i / 64] & mask != 0;
        self.words[i / 64] &= !mask;
        self.len -= present as usize;
        present
    }

    /// Flip membership of `e`; returns true if it is present afterwards.
    #[inline]
    pub fn toggle(&mut self, e: Element) -> bool {
        let i = e.index();
        let mask = 1u64 << (i % 64);
        self.words[i / 64] ^= mask;
        let present = self.words[i / 64] & mask != 0;
        if present {
            self.len += 1;
        } else {
            self.len -= 1;
        }
        present
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
        self.len = 0;
    }

    pub fn iter(&self) -> DenseSetIter<'_> {
        DenseSetIter { words: &self.words, word: 0, bits: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }
}

#[derive(Clone)]
pub struct DenseSetIter<'a> {
    words: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for DenseSetIter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        while self.bits == 0 {
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.bits = self.words[self.word];
        }
        let b = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(Element((self.word * 64) as u32 + b))
    }
}

impl FromIterator<Element> for DenseSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let items: Vec<Element> = iter.into_iter().collect();
        let cap = items.iter().map(|e| e.index() + 1).max().unwrap_or(0);
        let mut s = DenseSet::new(cap);
        for e in items {
            s.insert(e);
        }
        s
    }
}

/// Sorted element list from a bitmask over a small ground set; test helper
/// used widely by brute-force oracles.
pub fn mask_to_elements(mask: u64) -> Vec<Element> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(Element(m.trailing_zeros()));
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toggle_round_trips() {
        let mut s = DenseSet::new(130);
        assert!(!s.contains(Element(129)));
        s.toggle(Element(129));
        assert!(s.contains(Element(129)));
        assert_eq!(s.len(), 1);
        s.toggle(Element(129));
        assert!(s.is_empty());
    }

    #[test]
    fn iter_is_sorted() {
        let mut s = DenseSet::new(100);
        for e in [5u32, 99, 0, 64, 63] {
            s.insert(Element(e));
        }
        let v: Vec<u32> = s.iter().map(|e| e.0).collect();
        assert_eq!(v, vec![0, 5, 63, 64, 99]);
    }
}
