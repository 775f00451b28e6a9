//! Finite simplicial complexes on an ordered ground set.
//!
//! A [`Complex`] owns its vertex order; every [`Face`] is a bitmask over that
//! order. The empty face is always present, so `{∅}` is the smallest complex
//! and the void complex is not representable.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::family::Family;

pub const MAX_VERTICES: usize = 64;

/// Face counts indexed by cardinality: `counts[s]` is the number of faces with
/// `s` vertices, so `counts[0] == 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// `f_s`, zero past the top.
    pub fn get(&self, s: usize) -> u64 {
        self.0.get(s).copied().unwrap_or(0)
    }

    /// f-vector of a join.
    pub fn convolve(&self, other: &FVector) -> FVector {
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FVector(out)
    }

    /// Reduced Euler characteristic `Σ_s (-1)^(s-1) f_s`.
    pub fn reduced_euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(s, &c)| if s % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    labels: Vec<String>,
    /// Sorted by [`Face::graded_cmp`].
    faces: Vec<Face>,
    /// `layers[s]..layers[s+1]` indexes the faces of cardinality `s`.
    layers: Vec<usize>,
    facets: Vec<Face>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("vertices", &self.labels)
            .field("facets", &self.facet_label_sets())
            .finish()
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            count: labels.len(),
            limit: MAX_VERTICES,
        });
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl Complex {
    /// Complex generated by `facets`: every subset of every listed set.
    ///
    /// Without an explicit order the vertex order is the order of first
    /// appearance. Dominated generators are absorbed.
    pub fn from_facets<L: AsRef<str>>(facets: &[Vec<L>], order: Option<&[L]>) -> Result<Complex> {
        if facets.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let declared = order.is_some();
        if let Some(order) = order {
            labels = order.iter().map(|l| l.as_ref().to_string()).collect();
            check_labels(&labels)?;
            index = labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), i))
                .collect();
        }
        let mut gens = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut face = Face::EMPTY;
            for l in facet {
                let l = l.as_ref();
                let i = match index.get(l) {
                    Some(&i) => i,
                    None if declared => return Err(Error::UnknownVertex(l.to_string())),
                    None => {
                        labels.push(l.to_string());
                        if labels.len() > MAX_VERTICES {
                            return Err(Error::TooManyVertices {
                                count: labels.len(),
                                limit: MAX_VERTICES,
                            });
                        }
                        index.insert(l.to_string(), labels.len() - 1);
                        labels.len() - 1
                    }
                };
                face = face.with(i);
            }
            gens.push(face);
        }
        Complex::generated(labels, gens)
    }

    /// Ground set `1..=n` labelled by decimal strings, facets given by
    /// 1-based vertex numbers.
    pub fn from_index_facets(n: usize, facets: &[&[usize]]) -> Result<Complex> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut gens = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut face = Face::EMPTY;
            for &v in *facet {
                if v == 0 || v > n {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
                face = face.with(v - 1);
            }
            gens.push(face);
        }
        if gens.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        Complex::generated(labels, gens)
    }

    /// The full simplex on `1..=n`.
    pub fn simplex(n: usize) -> Complex {
        let facet: Vec<usize> = (1..=n).collect();
        Complex::from_index_facets(n, &[&facet]).expect("simplex")
    }

    /// Downward closure of `generators` on the ground set `labels`.
    pub fn generated<I: IntoIterator<Item = Face>>(labels: Vec<String>, generators: I) -> Result<Complex> {
        check_labels(&labels)?;
        let full = Face::prefix(labels.len());
        let mut set: HashSet<Face> = HashSet::new();
        set.insert(Face::EMPTY);
        for g in generators {
            if !g.is_subset_of(full) {
                return Err(Error::InvalidParameter(format!(
                    "generator {g:?} outside a ground set of {} vertices",
                    labels.len()
                )));
            }
            if set.contains(&g) {
                continue;
            }
            for s in g.subsets() {
                set.insert(s);
            }
        }
        Ok(Complex::from_closed(labels, set.into_iter().collect()))
    }

    /// Build from a face list that is already downward closed and contains ∅.
    pub(crate) fn from_closed(labels: Vec<String>, mut faces: Vec<Face>) -> Complex {
        faces.sort_by(|a, b| a.graded_cmp(*b));
        faces.dedup();
        debug_assert!(faces.first() == Some(&Face::EMPTY));
        let top = faces.last().map_or(0, |f| f.size());
        let mut layers = vec![0usize; top + 2];
        for f in &faces {
            layers[f.size() + 1] += 1;
        }
        for s in 1..layers.len() {
            layers[s] += layers[s - 1];
        }
        let mut cx = Complex {
            labels,
            faces,
            layers,
            facets: Vec::new(),
        };
        let n = cx.labels.len();
        let facets: Vec<Face> = cx
            .faces
            .iter()
            .copied()
            .filter(|&f| (0..n).all(|v| f.contains(v) || !cx.contains(f.with(v))))
            .collect();
        cx.facets = facets;
        cx
    }

    /// Parse the facet-list text format: an optional `vertices: a b c` header,
    /// then one whitespace-separated facet per line; `#` starts a comment.
    pub fn parse_facet_list(text: &str) -> Result<Complex> {
        let mut order: Option<Vec<String>> = None;
        let mut facets: Vec<Vec<String>> = Vec::new();
        let mut seen_body = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if seen_body || order.is_some() {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: "vertex header must precede all facets and appear once".into(),
                    });
                }
                let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: "empty vertex header".into(),
                    });
                }
                check_labels(&labels).map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: e.to_string(),
                })?;
                order = Some(labels);
                continue;
            }
            if line.contains(':') {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("unexpected `:` in facet line `{line}`"),
                });
            }
            seen_body = true;
            let facet: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            if let Some(order) = &order {
                if let Some(bad) = facet.iter().find(|l| !order.contains(l)) {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("vertex `{bad}` is not in the declared vertex order"),
                    });
                }
            }
            facets.push(facet);
        }
        Complex::from_facets(&facets, order.as_deref())
    }

    /// Canonical facet-list text: header line, then facets in graded
    /// lexicographic order.
    pub fn to_facet_list(&self) -> String {
        let mut out = String::from("vertices:");
        for l in &self.labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        for f in &self.facets {
            let line: Vec<&str> = f.indices().map(|i| self.labels[i].as_str()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn face_from_labels<L: AsRef<str>>(&self, labels: &[L]) -> Result<Face> {
        let mut f = Face::EMPTY;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_string()))?;
            f = f.with(i);
        }
        Ok(f)
    }

    pub fn face_labels(&self, f: Face) -> Vec<String> {
        f.indices().map(|i| self.labels[i].clone()).collect()
    }

    /// Vertices that lie in some face.
    pub fn vertex_set(&self) -> Face {
        self.faces_slice(1)
            .iter()
            .fold(Face::EMPTY, |acc, &f| acc.union(f))
    }

    pub fn is_vertex(&self, v: usize) -> bool {
        v < self.n() && self.contains(Face::EMPTY.with(v))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_label_sets(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|&f| self.face_labels(f)).collect()
    }

    pub fn contains(&self, f: Face) -> bool {
        let s = f.size();
        self.faces_slice(s)
            .binary_search_by(|g| g.lex_cmp(f))
            .is_ok()
    }

    /// Faces of cardinality `s` in lexicographic order.
    pub fn faces_slice(&self, s: usize) -> &[Face] {
        if s + 1 >= self.layers.len() {
            return &[];
        }
        &self.faces[self.layers[s]..self.layers[s + 1]]
    }

    /// The layer `Δ_(s)`.
    pub fn faces_of_size(&self, s: usize) -> Family {
        Family::new(self.faces_slice(s).iter().copied())
    }

    /// Largest face cardinality.
    pub fn max_face_size(&self) -> usize {
        self.layers.len() - 2
    }

    pub fn dim(&self) -> i64 {
        self.max_face_size() as i64 - 1
    }

    /// Smallest facet cardinality.
    pub fn min_facet_cardinality(&self) -> usize {
        self.facets.iter().map(|f| f.size()).min().unwrap_or(0)
    }

    pub fn min_facet_dim(&self) -> i64 {
        self.min_facet_cardinality() as i64 - 1
    }

    pub fn is_pure(&self) -> bool {
        let s = self.facets[0].size();
        self.facets.iter().all(|f| f.size() == s)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(
            (0..=self.max_face_size())
                .map(|s| self.faces_slice(s).len() as u64)
                .collect(),
        )
    }

    /// `lk σ`, on the ground set with the vertices of `σ` removed.
    pub fn link(&self, sigma: Face) -> Result<Complex> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace);
        }
        if sigma.is_empty() {
            return Ok(self.clone());
        }
        let faces = self
            .faces
            .iter()
            .filter(|&&f| sigma.is_subset_of(f))
            .map(|&f| f.minus(sigma).squeeze(sigma))
            .collect();
        Ok(Complex::from_closed(self.labels_without(sigma), faces))
    }

    /// `ast σ`: the faces avoiding `σ`, on the ground set without `σ`.
    pub fn antistar(&self, sigma: Face) -> Complex {
        let faces = self
            .faces
            .iter()
            .filter(|&&f| f.is_disjoint(sigma))
            .map(|&f| f.squeeze(sigma))
            .collect();
        Complex::from_closed(self.labels_without(sigma), faces)
    }

    /// Deletion of the vertex set `removed` without re-indexing; used where
    /// positions must stay fixed.
    pub fn induced_on_complement(&self, removed: Face) -> Complex {
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| f.is_disjoint(removed))
            .collect();
        Complex::from_closed(self.labels.clone(), faces)
    }

    fn labels_without(&self, sigma: Face) -> Vec<String> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, _)| !sigma.contains(*i))
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// `Δ^{(r)}`: faces of dimension at most `r`.
    pub fn skeleton(&self, r: i64) -> Complex {
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| f.dim() <= r)
            .collect();
        Complex::from_closed(self.labels.clone(), faces)
    }

    /// Complex generated by the faces of dimension exactly `r`.
    pub fn pure_skeleton(&self, r: i64) -> Result<Complex> {
        if r < -1 || r > self.dim() {
            return Err(Error::NoFaceOfDimension(r));
        }
        let top = self.faces_slice((r + 1) as usize).to_vec();
        Complex::generated(self.labels.clone(), top)
    }

    /// Join with a complex on a disjoint label set; the ground set is `self`'s
    /// order followed by `other`'s.
    pub fn join(&self, other: &Complex) -> Result<Complex> {
        for l in &other.labels {
            if self.labels.contains(l) {
                return Err(Error::OverlappingVertices(l.clone()));
            }
        }
        let shift = self.n();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        check_labels(&labels)?;
        let mut faces = Vec::with_capacity(self.faces.len() * other.faces.len());
        for &a in &self.faces {
            for &b in &other.faces {
                faces.push(Face(a.0 | (b.0 << shift)));
            }
        }
        Ok(Complex::from_closed(labels, faces))
    }

    /// Cone with a new apex placed first in the vertex order.
    pub fn cone(&self, apex: &str) -> Result<Complex> {
        let point = Complex::from_facets(&[vec![apex]], None)?;
        point.join(self)
    }

    /// The first swap witness against shiftedness: a face `σ`, a vertex
    /// `v_i ∈ σ` and an earlier `v_j ∉ σ` such that the swap leaves `Δ`.
    pub fn shifted_witness(&self) -> Option<(Face, usize, usize)> {
        for &f in &self.faces {
            for i in f.indices() {
                for j in 0..i {
                    if !f.contains(j) && !self.contains(f.without(i).with(j)) {
                        return Some((f, i, j));
                    }
                }
            }
        }
        None
    }

    /// Closed under replacing any vertex by an earlier one.
    pub fn is_shifted(&self) -> bool {
        self.shifted_witness().is_none()
    }

    /// Same faces, ground set reordered so that new position `i` holds old
    /// vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Complex> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut inverse = vec![0usize; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let faces = self
            .faces
            .iter()
            .map(|f| Face::from_indices(f.indices().map(|v| inverse[v])))
            .collect();
        Ok(Complex::from_closed(labels, faces))
    }

    /// Inclusion by vertex labels.
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        let map: Vec<Option<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        self.faces.iter().all(|f| {
            let mut g = Face::EMPTY;
            for v in f.indices() {
                match map[v] {
                    Some(i) => g = g.with(i),
                    None => return false,
                }
            }
            other.contains(g)
        })
    }

    /// Faces compared position by position, ignoring labels.
    pub fn same_faces(&self, other: &Complex) -> bool {
        self.faces == other.faces
    }

    /// Faces of `self` are faces of `other`, compared position by position.
    pub fn faces_within(&self, other: &Complex) -> bool {
        self.faces.iter().all(|&f| other.contains(f))
    }

    /// Copy of `self` with the same faces on another label list.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Complex> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: labels.len(),
            });
        }
        check_labels(&labels)?;
        Ok(Complex {
            labels,
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().map(|v| v - 1))
    }

    fn hollow_triangle() -> Complex {
        Complex::from_index_facets(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap()
    }

    #[test]
    fn two_generator_closure() {
        let c = Complex::from_facets(&[vec!["1", "2"], vec!["3"]], None).unwrap();
        assert_eq!(c.f_vector(), FVector(vec![1, 3, 1]));
        assert_eq!(c.num_faces(), 5);
        assert_eq!(c.labels(), ["1", "2", "3"]);
    }

    #[test]
    fn example_complex_shape() {
        let c = crate::fixtures::nonface_apex_example();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.f_vector(), FVector(vec![1, 6, 13, 4, 1]));
        assert_eq!(c.faces_of_size(4).members(), &[idx(&[1, 2, 4, 6])]);
        assert_eq!(c.min_facet_cardinality(), 2);
    }

    #[test]
    fn from_facets_errors() {
        let none: [Vec<&str>; 0] = [];
        assert_eq!(Complex::from_facets(&none, None), Err(Error::EmptyFacetList));
        let order = ["a", "b", "a"];
        assert_eq!(
            Complex::from_facets(&[vec!["a"]], Some(&order[..])),
            Err(Error::DuplicateLabel("a".into()))
        );
        let order = ["a", "b"];
        assert_eq!(
            Complex::from_facets(&[vec!["c"]], Some(&order[..])),
            Err(Error::UnknownVertex("c".into()))
        );
    }

    #[test]
    fn dominated_generators_absorbed() {
        let c = Complex::from_index_facets(3, &[&[1, 2, 3], &[1, 2], &[3]]).unwrap();
        assert_eq!(c.facets(), &[idx(&[1, 2, 3])]);
    }

    #[test]
    fn faces_of_size_cases() {
        let t = hollow_triangle();
        assert_eq!(
            t.faces_of_size(2).members(),
            &[idx(&[1, 2]), idx(&[1, 3]), idx(&[2, 3])]
        );
        assert_eq!(t.faces_of_size(0).members(), &[Face::EMPTY]);
        assert!(t.faces_of_size(5).is_empty());
    }

    #[test]
    fn f_vectors() {
        assert_eq!(Complex::simplex(4).f_vector(), FVector(vec![1, 4, 6, 4, 1]));
        assert_eq!(hollow_triangle().f_vector(), FVector(vec![1, 3, 3]));
    }

    #[test]
    fn links() {
        let c = crate::fixtures::nonface_apex_example();
        assert_eq!(c.link(Face::EMPTY).unwrap(), c);
        let lk = c.link(idx(&[3])).unwrap();
        assert_eq!(lk.labels(), ["1", "2", "4", "5", "6"]);
        assert_eq!(lk.f_vector(), FVector(vec![1, 5]));
        let s = Complex::simplex(4);
        let lk = s.link(idx(&[1])).unwrap();
        assert_eq!(lk.labels(), ["2", "3", "4"]);
        assert_eq!(lk.f_vector(), FVector(vec![1, 3, 3, 1]));
        assert_eq!(c.link(idx(&[4, 5])), Err(Error::NotAFace));
    }

    #[test]
    fn antistars_follow_example() {
        let c = crate::fixtures::nonface_apex_example();
        let d1 = c.antistar(idx(&[1]));
        let want1 = Complex::from_facets(
            &[
                vec!["2", "4", "6"],
                vec!["2", "3"],
                vec!["2", "5"],
                vec!["3", "4"],
                vec!["3", "5"],
                vec!["3", "6"],
            ],
            Some(&["2", "3", "4", "5", "6"][..]),
        )
        .unwrap();
        assert_eq!(d1, want1);
        let d2 = d1.antistar(d1.face_from_labels(&["2"]).unwrap());
        let want2 = Complex::from_facets(
            &[vec!["4", "6"], vec!["3", "4"], vec!["3", "5"], vec!["3", "6"]],
            Some(&["3", "4", "5", "6"][..]),
        )
        .unwrap();
        assert_eq!(d2, want2);
        let s = Complex::simplex(3).antistar(idx(&[1]));
        assert_eq!(s.labels(), ["2", "3"]);
        assert_eq!(s.f_vector(), FVector(vec![1, 2, 1]));
    }

    #[test]
    fn skeleta() {
        assert_eq!(Complex::simplex(4).skeleton(1).f_vector(), FVector(vec![1, 4, 6]));
        let c = crate::fixtures::nonface_apex_example();
        assert_eq!(c.skeleton(c.dim()), c);
        assert_eq!(c.skeleton(1).f_vector(), FVector(vec![1, 6, 13]));
        let p = c.pure_skeleton(1).unwrap();
        assert_eq!(p, c.skeleton(1));
        assert!(p.is_pure());
        let mixed = Complex::from_index_facets(3, &[&[1, 2], &[3]]).unwrap();
        let p0 = mixed.pure_skeleton(0).unwrap();
        assert_eq!(p0.f_vector(), FVector(vec![1, 3]));
        assert_eq!(hollow_triangle().pure_skeleton(1).unwrap(), hollow_triangle());
        assert_eq!(mixed.pure_skeleton(2), Err(Error::NoFaceOfDimension(2)));
    }

    #[test]
    fn joins() {
        let a = Complex::from_facets(&[vec!["a"]], None).unwrap();
        let b = Complex::from_facets(&[vec!["b"]], None).unwrap();
        assert_eq!(a.join(&b).unwrap().f_vector(), FVector(vec![1, 2, 1]));
        let cone = hollow_triangle().cone("v").unwrap();
        assert_eq!(cone.f_vector(), FVector(vec![1, 4, 6, 3]));
        assert_eq!(
            a.join(&a),
            Err(Error::OverlappingVertices("a".into()))
        );
    }

    #[test]
    fn shiftedness() {
        assert!(Complex::from_index_facets(3, &[&[1, 2], &[1, 3]]).unwrap().is_shifted());
        let c = Complex::from_index_facets(4, &[&[1, 4], &[2, 3]]).unwrap();
        assert!(!c.is_shifted());
        assert!(Complex::simplex(5).is_shifted());
    }

    #[test]
    fn shiftedness_depends_on_order() {
        let c = Complex::from_index_facets(3, &[&[1, 2], &[1, 3]]).unwrap();
        assert!(c.is_shifted());
        // move vertex 1 last: edges 23 and 13 do not contain the new first vertex
        let p = c.permuted(&[1, 2, 0]).unwrap();
        assert_eq!(p.labels(), ["2", "3", "1"]);
        assert!(!p.is_shifted());
    }

    #[test]
    fn facet_list_round_trip() {
        let c = crate::fixtures::nonface_apex_example();
        let back = Complex::parse_facet_list(&c.to_facet_list()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn parse_header_keeps_unused_vertex() {
        let c = Complex::parse_facet_list("vertices: a b c\na c\n").unwrap();
        assert_eq!(c.labels(), ["a", "b", "c"]);
        assert_eq!(c.facets(), &[Face::from_indices([0, 2])]);
        assert!(!c.is_vertex(1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Complex::parse_facet_list("vertices: a b\n# comment\na z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = Complex::parse_facet_list("a b\nvertices: a b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert_eq!(Complex::parse_facet_list("# nothing\n"), Err(Error::EmptyFacetList));
    }

    #[test]
    fn subcomplex_by_labels() {
        let c = crate::fixtures::nonface_apex_example();
        let sub = Complex::from_facets(&[vec!["3", "6"], vec!["1", "2", "4"]], None).unwrap();
        assert!(sub.is_subcomplex_of(&c));
        let not = Complex::from_facets(&[vec!["5", "6"]], None).unwrap();
        assert!(!not.is_subcomplex_of(&c));
        let alien = Complex::from_facets(&[vec!["x"]], None).unwrap();
        assert!(!alien.is_subcomplex_of(&c));
    }
}
