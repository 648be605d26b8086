//! Bit-indexed vertex sets over the 1-based vertex range `1..=n`.

use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of `[n] = {1, ..., n}` stored as a bitset.
///
/// Equality compares both the universe size and the members.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    /// The whole vertex range `[n]`.
    pub fn full(n: usize) -> Self {
        Self::interval(n, 1, n)
    }

    /// `[lo, hi] ∩ [n]`; empty when `lo > hi`.
    pub fn interval(n: usize, lo: usize, hi: usize) -> Self {
        let mut set = Self::empty(n);
        for v in lo.max(1)..=hi.min(n) {
            set.insert(v);
        }
        set
    }

    /// Builds a set from vertex ids; ids outside `1..=n` panic.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut set = Self::empty(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Bit `i` of `mask` (0-based) becomes vertex `i + 1`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut set = Self::empty(n);
        if n > 0 {
            let keep = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
            set.words[0] = mask & keep;
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v >= 1 && v <= self.n, "vertex {v} outside 1..={}", self.n);
        self.words[(v - 1) / 64] |= 1 << ((v - 1) % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v >= 1 && v <= self.n {
            self.words[(v - 1) / 64] &= !(1 << ((v - 1) % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v <= self.n && self.words[(v - 1) / 64] >> ((v - 1) % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit + 1)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
            && (self.n <= other.n || self.iter().all(|v| v <= other.n))
    }

    /// `S ∩ [w]`.
    pub fn restrict(&self, w: usize) -> Self {
        let mut out = self.clone();
        for v in (w + 1)..=self.n {
            out.remove(v);
        }
        out
    }

    /// Relabels members through `map` (old id → new id) into a universe of size `n`.
    pub fn map(&self, n: usize, map: impl Fn(usize) -> usize) -> Self {
        Self::from_vertices(n, self.iter().map(map))
    }

    /// The low 64 vertices as a bitmask (vertex 1 is bit 0).
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = VertexSet::from_vertices(70, [1, 3, 65, 70]);
        let b = VertexSet::interval(70, 3, 65);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 65]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 70]);
        assert_eq!(a.union(&b).len(), 65);
        assert_eq!(a.restrict(64).to_vec(), vec![1, 3]);
        assert!(a.intersection(&b).is_subset(&b));
        assert!(!a.is_subset(&b));
        assert!(!a.contains(0) && !a.contains(71));
    }

    #[test]
    fn mask_roundtrip() {
        let s = VertexSet::from_mask(5, 0b10101);
        assert_eq!(s.to_vec(), vec![1, 3, 5]);
        assert_eq!(s.mask(), 0b10101);
        assert!(VertexSet::full(0).is_empty());
    }
}
