//! Index sets over `[1, n]` and set families encoded as `2^n`-bit patterns.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of `[1, n]`; element `i` lives at bit `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        IndexSet(bits)
    }

    /// From 1-based indices. Panics on index 0 or above 32.
    pub fn from_indices<I: IntoIterator<Item = usize>>(idx: I) -> Self {
        let mut bits = 0u32;
        for i in idx {
            assert!((1..=32).contains(&i), "index {i} out of range");
            bits |= 1 << (i - 1);
        }
        IndexSet(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            IndexSet(u32::MAX)
        } else {
            IndexSet((1u32 << n) - 1)
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: IndexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 ^ other.0)
    }

    pub fn with(self, i: usize) -> IndexSet {
        self.union(IndexSet::from_indices([i]))
    }

    pub fn without(self, i: usize) -> IndexSet {
        self.difference(IndexSet::from_indices([i]))
    }

    /// 1-based elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    /// Image under a coordinate map; `perm[i]` is the new 0-based position of coordinate `i`.
    pub fn permute(self, perm: &[usize]) -> IndexSet {
        IndexSet::from_indices(self.iter().map(|i| perm[i - 1] + 1))
    }

    /// Order by the sorted element sequence: `{1,2} < {1,2,3} < {1,3} < {2}`.
    pub fn lex_cmp(self, other: IndexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A family of subsets of `[1, n]`, stored as a `2^n`-bit pattern where subset
/// `I` sits at bit index `sum_{i in I} 2^(i-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    words: Vec<u64>,
}

impl SetFamily {
    pub fn empty(n: usize) -> Self {
        let bits = 1usize << n;
        SetFamily { n, words: vec![0; bits.div_ceil(64)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw 64-bit words of the pattern, least significant first.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, s: IndexSet) {
        let k = s.bits() as usize;
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, s: IndexSet) -> bool {
        let k = s.bits() as usize;
        k < (1usize << self.n) && self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing bit-index order.
    pub fn iter(&self) -> impl Iterator<Item = IndexSet> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(IndexSet::from_bits((wi * 64 + b) as u32))
            })
        })
    }

    pub fn map(&self, f: impl Fn(IndexSet) -> IndexSet) -> SetFamily {
        let mut out = SetFamily::empty(self.n);
        for s in self.iter() {
            out.insert(f(s));
        }
        out
    }

    /// Lowercase hex of the bit pattern, most significant nibble first.
    pub fn to_hex(&self) -> String {
        let nibbles = ((1usize << self.n) / 4).max(1);
        (0..nibbles)
            .rev()
            .map(|j| {
                let bit = j * 4;
                let v = (self.words[bit / 64] >> (bit % 64)) & 0xf;
                char::from_digit(v as u32, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(n: usize, hex: &str) -> Option<SetFamily> {
        let nibbles = ((1usize << n) / 4).max(1);
        if hex.len() != nibbles {
            return None;
        }
        let mut out = SetFamily::empty(n);
        for (j, ch) in hex.chars().rev().enumerate() {
            let v = ch.to_digit(16)? as u64;
            let bit = j * 4;
            out.words[bit / 64] |= v << (bit % 64);
        }
        if n < 2 && out.words[0] >> (1usize << n) != 0 {
            return None;
        }
        Some(out)
    }
}

/// Visits every subset of `[1, n]` in reflected Gray-code order. The callback
/// receives the subset and the element that was toggled to reach it
/// (`None` for the initial empty set) together with whether it was added.
pub fn gray_code_walk(n: usize, mut visit: impl FnMut(IndexSet, Option<(usize, bool)>)) {
    let mut cur = 0u32;
    visit(IndexSet::EMPTY, None);
    for k in 1u64..(1u64 << n) {
        let i = k.trailing_zeros() as usize;
        cur ^= 1 << i;
        visit(IndexSet::from_bits(cur), Some((i + 1, cur >> i & 1 == 1)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_basics() {
        let s = IndexSet::from_indices([3, 1]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.len(), 2);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.max(), Some(3));
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(IndexSet::EMPTY.min(), None);
        assert_eq!(s.permute(&[2, 1, 0]), IndexSet::from_indices([1, 3]));
        assert_eq!(s.permute(&[1, 0, 2]), IndexSet::from_indices([2, 3]));
    }

    #[test]
    fn lex_order() {
        let a = IndexSet::from_indices([1, 2]);
        let b = IndexSet::from_indices([1, 2, 3]);
        let c = IndexSet::from_indices([1, 3]);
        let d = IndexSet::from_indices([2]);
        assert_eq!(a.lex_cmp(b), Ordering::Less);
        assert_eq!(b.lex_cmp(c), Ordering::Less);
        assert_eq!(c.lex_cmp(d), Ordering::Less);
    }

    #[test]
    fn gray_walk_visits_everything_once() {
        for n in 0..8 {
            let mut seen = vec![false; 1 << n];
            let mut prev = IndexSet::EMPTY;
            gray_code_walk(n, |s, step| {
                assert!(!seen[s.bits() as usize]);
                seen[s.bits() as usize] = true;
                if let Some((i, added)) = step {
                    assert_eq!(prev.symmetric_difference(s), IndexSet::from_indices([i]));
                    assert_eq!(s.contains(i), added);
                }
                prev = s;
            });
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn hex_encoding() {
        let mut fam = SetFamily::empty(4);
        for s in [vec![1], vec![2], vec![3, 4], vec![1, 2, 3], vec![1, 2, 4]] {
            fam.insert(IndexSet::from_indices(s));
        }
        assert_eq!(fam.to_hex(), "1886");
        assert_eq!(SetFamily::from_hex(4, "1886"), Some(fam.clone()));
        assert_eq!(fam.len(), 5);

        let mut one = SetFamily::empty(1);
        one.insert(IndexSet::from_indices([1]));
        assert_eq!(one.to_hex(), "2");
        assert_eq!(SetFamily::from_hex(1, "2"), Some(one));
        assert_eq!(SetFamily::from_hex(1, "4"), None);

        let big = SetFamily::empty(9);
        assert_eq!(big.to_hex().len(), 128);
    }
}
