use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::face::Face;

/// A set of faces, kept sorted by size and then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Family {
    members: Vec<Face>,
}

impl Family {
    pub fn new<I: IntoIterator<Item = Face>>(members: I) -> Family {
        let mut members: Vec<Face> = members.into_iter().collect();
        members.sort_by(|a, b| a.graded_cmp(*b));
        members.dedup();
        Family { members }
    }

    pub fn members(&self) -> &[Face] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: Face) -> bool {
        self.members
            .binary_search_by(|m| m.graded_cmp(f))
            .is_ok()
    }

    /// Distinct member cardinalities.
    pub fn sizes(&self) -> BTreeSet<usize> {
        self.members.iter().map(|f| f.size()).collect()
    }

    /// Common cardinality of all members, `None` for an empty or mixed family.
    pub fn uniform_size(&self) -> Option<usize> {
        let sizes = self.sizes();
        if sizes.len() == 1 {
            sizes.into_iter().next()
        } else {
            None
        }
    }

    /// First pair (in member order) whose intersection has fewer than `t`
    /// vertices, or `None` when the family is `t`-intersecting.
    pub fn intersection_witness(&self, t: usize) -> Option<(Face, Face)> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if a.intersection(b).size() < t {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.intersection_witness(t).is_none()
    }

    pub fn iter(&self) -> impl Iterator<Item = Face> + '_ {
        self.members.iter().copied()
    }
}

impl FromIterator<Face> for Family {
    fn from_iter<I: IntoIterator<Item = Face>>(iter: I) -> Self {
        Family::new(iter)
    }
}

/// Pairwise intersection check with the lex-first failing pair as witness.
pub fn is_t_intersecting(family: &Family, t: usize) -> (bool, Option<(Face, Face)>) {
    let w = family.intersection_witness(t);
    (w.is_none(), w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().copied())
    }

    #[test]
    fn common_pair_is_two_intersecting() {
        let fam = Family::new([f(&[1, 2, 3]), f(&[1, 2, 4]), f(&[1, 2, 5])]);
        assert_eq!(is_t_intersecting(&fam, 2), (true, None));
        assert!(!fam.is_t_intersecting(3));
    }

    #[test]
    fn disjoint_edges_give_witness() {
        let fam = Family::new([f(&[3, 4]), f(&[1, 2])]);
        let (ok, w) = is_t_intersecting(&fam, 1);
        assert!(!ok);
        assert_eq!(w, Some((f(&[1, 2]), f(&[3, 4]))));
    }

    #[test]
    fn singleton_family_is_intersecting() {
        let fam = Family::new([f(&[0, 5, 7])]);
        for t in 1..=3 {
            assert!(fam.is_t_intersecting(t));
        }
    }

    #[test]
    fn witness_is_lex_first_pair() {
        let fam = Family::new([f(&[0, 1]), f(&[2, 3]), f(&[0, 4]), f(&[1, 4])]);
        // members sorted: 01, 04, 14, 23; first failing pair is (01, 23)
        assert_eq!(fam.intersection_witness(1), Some((f(&[0, 1]), f(&[2, 3]))));
    }
}
