//! Faces as bitmasks over an ordered ground set.
//!
//! Bit `i` of a [`Face`] stands for the `i`-th vertex of the owning complex's
//! vertex order, so faces are only meaningful next to that order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite vertex set stored as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(pub u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Face {
        Face(indices.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    /// The initial segment `{0, .., k-1}`.
    pub fn prefix(k: usize) -> Face {
        if k >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << k) - 1)
        }
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn dim(self) -> i64 {
        self.size() as i64 - 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Face {
        Face(self.0 | 1 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << v))
    }

    #[inline]
    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    /// Vertex indices in increasing order.
    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    /// Every subset of `self`, the empty set and `self` included.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(self.0),
        }
    }

    /// Lexicographic comparison of the sorted index tuples of two faces of
    /// equal size. The face holding the lowest differing vertex is smaller.
    pub fn lex_cmp(self, other: Face) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Size first, then lexicographic.
    pub fn graded_cmp(self, other: Face) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.lex_cmp(other))
    }

    /// Re-index after deleting the vertices in `removed` from the ground set.
    /// Bits of `self` inside `removed` are dropped.
    pub fn squeeze(self, removed: Face) -> Face {
        if removed.0 == 0 {
            return self;
        }
        let mut out = 0u64;
        let mut j = 0;
        for i in 0..64 {
            if removed.contains(i) {
                continue;
            }
            if self.contains(i) {
                out |= 1 << j;
            }
            j += 1;
        }
        Face(out)
    }

    /// Inverse of [`Face::squeeze`]: spread a face on the reduced ground set
    /// back over the positions not in `removed`.
    pub fn spread(self, removed: Face) -> Face {
        if removed.0 == 0 {
            return self;
        }
        let mut out = 0u64;
        let mut j = 0;
        for i in 0..64 {
            if removed.contains(i) {
                continue;
            }
            if self.contains(j) {
                out |= 1 << i;
            }
            j += 1;
            if j == 64 {
                break;
            }
        }
        Face(out)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

pub struct Subsets {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.full)
        };
        Some(Face(cur))
    }
}

/// All `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Face> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Face::EMPTY);
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(Face::from_indices(idx.iter().copied()));
        // advance the rightmost index that can still move
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_matches_sorted_tuples() {
        let subs = k_subsets(5, 3);
        assert_eq!(subs.len(), 10);
        for w in subs.windows(2) {
            let a: Vec<usize> = w[0].indices().collect();
            let b: Vec<usize> = w[1].indices().collect();
            assert!(a < b);
            assert_eq!(w[0].lex_cmp(w[1]), Ordering::Less);
        }
        // {0,3} precedes {1,2} although its mask is larger
        assert_eq!(
            Face::from_indices([0, 3]).lex_cmp(Face::from_indices([1, 2])),
            Ordering::Less
        );
    }

    #[test]
    fn k_subsets_edge_cases() {
        assert_eq!(k_subsets(3, 0), vec![Face::EMPTY]);
        assert!(k_subsets(2, 3).is_empty());
        assert_eq!(k_subsets(4, 4), vec![Face::prefix(4)]);
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(k_subsets(n, k).len() as u64, binomial(n, k));
            }
        }
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let f = Face::from_indices([1, 4, 6]);
        let mut all: Vec<Face> = f.subsets().collect();
        all.sort_by(|a, b| a.graded_cmp(*b));
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Face::EMPTY);
        assert_eq!(all[7], f);
    }

    #[test]
    fn squeeze_and_spread_are_inverse_off_removed() {
        let removed = Face::from_indices([1, 3]);
        let f = Face::from_indices([0, 2, 4, 5]);
        let s = f.squeeze(removed);
        assert_eq!(s, Face::from_indices([0, 1, 2, 3]));
        assert_eq!(s.spread(removed), f);
    }
}
