//! Subsets of `{1, ..., r}` as bitmasks, listed in (cardinality, colex) order.
//!
//! For subsets of equal cardinality the colexicographic order coincides with
//! the numeric order of the masks, so the canonical ordering is simply
//! "fewer elements first, smaller mask first". Every basis indexed by
//! subsets anywhere in this crate uses this one ordering.

use std::fmt;

/// A subset of `{1, ..., r}`; bit `j - 1` encodes membership of `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex(u32);

impl SubsetIndex {
    pub const EMPTY: SubsetIndex = SubsetIndex(0);

    pub fn from_mask(mask: u32) -> Self {
        SubsetIndex(mask)
    }

    pub fn full(r: usize) -> Self {
        debug_assert!(r <= 32);
        SubsetIndex(if r == 32 { u32::MAX } else { (1u32 << r) - 1 })
    }

    /// Builds a subset from 1-based element labels.
    pub fn from_elems(elems: &[usize]) -> Self {
        let mut mask = 0;
        for &j in elems {
            assert!(j >= 1 && j <= 32, "element {j} out of range");
            mask |= 1 << (j - 1);
        }
        SubsetIndex(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, j: usize) -> bool {
        j >= 1 && j <= 32 && self.0 & (1 << (j - 1)) != 0
    }

    pub fn with(self, j: usize) -> Self {
        assert!(j >= 1 && j <= 32);
        SubsetIndex(self.0 | (1 << (j - 1)))
    }

    pub fn without(self, j: usize) -> Self {
        assert!(j >= 1 && j <= 32);
        SubsetIndex(self.0 & !(1 << (j - 1)))
    }

    pub fn is_subset_of(self, other: SubsetIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, r: usize) -> Self {
        SubsetIndex(Self::full(r).0 & !self.0)
    }

    /// 1-based element labels in increasing order.
    pub fn elems(self) -> Vec<usize> {
        (1..=32).filter(|&j| self.contains(j)).collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=32).filter(move |&j| self.contains(j))
    }

    /// Sort key realizing the canonical (cardinality, colex) order.
    pub fn card_colex_key(self) -> (u32, u32) {
        (self.cardinality(), self.0)
    }

    /// All subsets of `I` (including the empty set and `I` itself).
    pub fn subsets(self) -> Vec<SubsetIndex> {
        let mask = self.0;
        let mut out = Vec::with_capacity(1 << self.cardinality());
        let mut sub = 0u32;
        loop {
            out.push(SubsetIndex(sub));
            if sub == mask {
                break;
            }
            sub = (sub.wrapping_sub(mask)) & mask;
        }
        out.sort_by_key(|s| s.card_colex_key());
        out
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of `{1, ..., r}` in (cardinality, colex) order.
pub fn all_subsets(r: usize) -> Vec<SubsetIndex> {
    assert!(r <= 32);
    let mut out: Vec<SubsetIndex> = (0..(1u64 << r)).map(|m| SubsetIndex(m as u32)).collect();
    out.sort_by_key(|s| s.card_colex_key());
    out
}

/// The k-element subsets of `{1, ..., r}` in colex order.
pub fn subsets_of_size(r: usize, k: usize) -> Vec<SubsetIndex> {
    all_subsets(r)
        .into_iter()
        .filter(|s| s.cardinality() as usize == k)
        .collect()
}
