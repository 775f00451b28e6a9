//! Near-cones, apex sequences, and checks of the statements that relate
//! them to shifting.

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::shifting::{exterior_shift_with, ShiftOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearConeCertificate {
    pub verdict: bool,
    /// A face `σ` and a vertex `w ∈ σ` with `(σ \ {w}) ∪ {v}` missing.
    pub violating_face: Option<(Face, usize)>,
}

/// `(σ \ {w}) ∪ {v} ∈ Δ` for every face `σ` and every `w ∈ σ`.
pub fn is_near_cone(cx: &Complex, v: usize) -> Result<NearConeCertificate> {
    if !cx.is_vertex(v) {
        let label = if v < cx.n() { cx.label(v).to_string() } else { v.to_string() };
        return Err(Error::NotAVertex(label));
    }
    for &sigma in cx.faces() {
        for w in sigma.indices() {
            if !cx.contains(sigma.without(w).with(v)) {
                return Ok(NearConeCertificate {
                    verdict: false,
                    violating_face: Some((sigma, w)),
                });
            }
        }
    }
    Ok(NearConeCertificate {
        verdict: true,
        violating_face: None,
    })
}

/// Apex `v_1, …, v_i` with the chain `Δ(0) ⊃ Δ(1) ⊃ … ⊃ Δ(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexSequence {
    /// Apex vertices as indices into the ground set of `Δ(0)`.
    pub apex: Vec<usize>,
    /// `chain[j]` is `Δ(j)`; each on the ground set of its parent minus the
    /// removed apex.
    pub chain: Vec<Complex>,
}

impl ApexSequence {
    pub fn len(&self) -> usize {
        self.apex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.apex.is_empty()
    }

    pub fn apex_face(&self) -> Face {
        Face::from_indices(self.apex.iter().copied())
    }

    pub fn apex_labels(&self) -> Vec<String> {
        self.apex
            .iter()
            .map(|&v| self.chain[0].label(v).to_string())
            .collect()
    }

    /// Re-derive the chain from `cx` and the apex and check every link of
    /// it. Returns a description of the first broken condition.
    pub fn validate(&self, cx: &Complex) -> std::result::Result<(), String> {
        if self.chain.len() != self.apex.len() + 1 {
            return Err("chain length is not apex length plus one".into());
        }
        if self.chain[0] != *cx {
            return Err("chain does not start at the complex".into());
        }
        for (j, &v) in self.apex.iter().enumerate() {
            let prev = &self.chain[j];
            let label = cx.label(v);
            let Some(local) = prev.index_of(label) else {
                return Err(format!("apex {label} already removed"));
            };
            if !prev.is_vertex(local) {
                return Err(format!("apex {label} is not a vertex of Δ({j})"));
            }
            match is_near_cone(prev, local) {
                Ok(c) if c.verdict => {}
                _ => return Err(format!("Δ({j}) is not a near-cone with respect to {label}")),
            }
            let next = prev.antistar(Face::EMPTY.with(local));
            if next != self.chain[j + 1] {
                return Err(format!("Δ({}) is not the anti-star of {label}", j + 1));
            }
            if next.vertex_set().is_empty() {
                return Err(format!("Δ({}) has no vertex", j + 1));
            }
        }
        Ok(())
    }
}

/// First apex sequence of length `i` in vertex-order backtracking; every
/// `Δ(j)` must keep at least one vertex.
pub fn find_apex_sequence(cx: &Complex, i: usize) -> Result<Option<ApexSequence>> {
    find_apex_sequence_with(cx, i, false)
}

/// As [`find_apex_sequence`]; with `allow_empty_tail` the last complex may be
/// `{∅}`.
pub fn find_apex_sequence_with(
    cx: &Complex,
    i: usize,
    allow_empty_tail: bool,
) -> Result<Option<ApexSequence>> {
    if i == 0 {
        return Err(Error::InvalidParameter("apex length must be at least 1".into()));
    }
    let mut labels = Vec::with_capacity(i);
    let mut chain = vec![cx.clone()];
    if search(&mut labels, &mut chain, i, allow_empty_tail) {
        let apex = labels
            .iter()
            .map(|l: &String| cx.index_of(l).expect("apex label"))
            .collect();
        Ok(Some(ApexSequence { apex, chain }))
    } else {
        Ok(None)
    }
}

fn search(labels: &mut Vec<String>, chain: &mut Vec<Complex>, remaining: usize, allow_empty_tail: bool) -> bool {
    if remaining == 0 {
        return true;
    }
    let current = chain.last().expect("nonempty chain").clone();
    for v in current.vertex_set().indices() {
        if !is_near_cone(&current, v).map(|c| c.verdict).unwrap_or(false) {
            continue;
        }
        let next = current.antistar(Face::EMPTY.with(v));
        let has_vertex = !next.vertex_set().is_empty();
        if !has_vertex && !(allow_empty_tail && remaining == 1) {
            continue;
        }
        labels.push(current.label(v).to_string());
        chain.push(next);
        if search(labels, chain, remaining - 1, allow_empty_tail) {
            return true;
        }
        labels.pop();
        chain.pop();
    }
    false
}

/// Largest `i` for which an apex sequence is found.
pub fn largest_apex_length(cx: &Complex) -> usize {
    let mut best = 0;
    for i in 1..=cx.vertex_set().size() {
        match find_apex_sequence(cx, i) {
            Ok(Some(_)) => best = i,
            _ => break,
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexFaceReport {
    pub i: usize,
    pub dim: i64,
    /// `dim Δ ≥ 2i - 2`.
    pub hypothesis: bool,
    pub apex_is_face: bool,
    /// Hypothesis holds and the apex set is not a face.
    pub violation: bool,
}

pub fn check_apex_face(cx: &Complex, seq: &ApexSequence) -> ApexFaceReport {
    let i = seq.len();
    let dim = cx.dim();
    let hypothesis = dim >= 2 * i as i64 - 2;
    let apex_is_face = cx.contains(seq.apex_face());
    ApexFaceReport {
        i,
        dim,
        hypothesis,
        apex_is_face,
        violation: hypothesis && !apex_is_face,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonShiftReport {
    pub s: i64,
    pub i: usize,
    /// Minimal facet cardinality.
    pub k: usize,
    /// `s ≤ k - i - 1`.
    pub in_range: bool,
    pub holds: bool,
    /// `(σ, j, w)`: swapping `w ∈ σ` for the `j`-th apex vertex leaves
    /// the skeleton.
    pub witness: Option<(Face, usize, usize)>,
    pub violation: bool,
}

/// Closure of `Δ^{(s)}` under replacing a vertex by an earlier apex vertex.
pub fn check_skeleton_shifting(cx: &Complex, seq: &ApexSequence, s: i64) -> SkeletonShiftReport {
    let i = seq.len();
    let k = cx.min_facet_cardinality();
    let sk = cx.skeleton(s);
    let mut witness = None;
    'outer: for &sigma in sk.faces() {
        for (j, &vj) in seq.apex.iter().enumerate() {
            if sigma.contains(vj) {
                continue;
            }
            let earlier = Face::from_indices(seq.apex[..=j].iter().copied());
            for w in sigma.minus(earlier).indices() {
                if !sk.contains(sigma.without(w).with(vj)) {
                    witness = Some((sigma, j + 1, w));
                    break 'outer;
                }
            }
        }
    }
    let in_range = s < k as i64 - i as i64;
    let holds = witness.is_none();
    SkeletonShiftReport {
        s,
        i,
        k,
        in_range,
        holds,
        witness,
        violation: in_range && !holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVectorCheck {
    pub r: usize,
    pub shifted_link: u64,
    pub shifted_of_link: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCommutationReport {
    pub i: usize,
    pub k: usize,
    pub dim: i64,
    /// `dim Δ ≥ 2i - 2`.
    pub hypothesis: bool,
    /// `lk_{Shift Δ} u_1 = Shift(lk_Δ v_1)`.
    pub near_cone_link: bool,
    /// Per skeleton dimension `s` with `i - 1 ≤ s ≤ k - i - 1`.
    pub skeleton_links: Vec<(i64, bool)>,
    /// Per `r ≤ k - 2i`.
    pub f_vectors: Vec<FVectorCheck>,
    pub stable: bool,
}

impl LinkCommutationReport {
    /// A stable computation where some in-range equality fails.
    pub fn violation(&self) -> bool {
        self.stable
            && (!self.near_cone_link
                || self.skeleton_links.iter().any(|(_, ok)| !ok)
                || self.f_vectors.iter().any(|c| !c.holds))
    }
}

/// `lk_{Shift Γ}{u_1..u_i}` against `Shift(lk_Γ F)`, vertex `j` of the
/// latter read as `u_{i+j}`.
fn link_of_shift_matches(
    gamma: &Complex,
    apex: Face,
    opts: &ShiftOptions,
) -> Result<(bool, bool, Complex, Complex)> {
    let i = apex.size();
    let shifted = exterior_shift_with(gamma, opts)?;
    let lk_shift = match shifted.shifted.link(Face::prefix(i)) {
        Ok(l) => l,
        Err(_) => {
            let lk = gamma.link(apex)?;
            return Ok((false, shifted.stable, lk.clone(), lk));
        }
    };
    let lk = gamma.link(apex)?;
    let shift_lk = exterior_shift_with(&lk, opts)?;
    let stable = shifted.stable && shift_lk.stable;
    Ok((
        lk_shift.same_faces(&shift_lk.shifted),
        stable,
        lk_shift,
        shift_lk.shifted,
    ))
}

pub fn check_link_commutation(
    cx: &Complex,
    seq: &ApexSequence,
    opts: &ShiftOptions,
) -> Result<LinkCommutationReport> {
    let i = seq.len();
    let k = cx.min_facet_cardinality();
    let dim = cx.dim();
    let hypothesis = dim >= 2 * i as i64 - 2;
    let apex = seq.apex_face();
    let mut stable = true;

    let first = Face::EMPTY.with(seq.apex[0]);
    let (near_cone_link, st, _, _) = link_of_shift_matches(cx, first, opts)?;
    stable &= st;

    let mut skeleton_links = Vec::new();
    let mut f_vectors = Vec::new();
    if hypothesis && cx.contains(apex) {
        let lo = i as i64 - 1;
        let hi = (k as i64 - i as i64 - 1).min(dim);
        for s in lo.max(0)..=hi {
            let (ok, st, _, _) = link_of_shift_matches(&cx.skeleton(s), apex, opts)?;
            stable &= st;
            skeleton_links.push((s, ok));
        }
        let top = k as i64 - 2 * i as i64;
        if top >= 0 {
            let (_, st, lk_shift, shift_lk) = link_of_shift_matches(cx, apex, opts)?;
            stable &= st;
            let a = lk_shift.f_vector();
            let b = shift_lk.f_vector();
            for r in 0..=top as usize {
                f_vectors.push(FVectorCheck {
                    r,
                    shifted_link: a.get(r),
                    shifted_of_link: b.get(r),
                    holds: a.get(r) == b.get(r),
                });
            }
        }
    }
    Ok(LinkCommutationReport {
        i,
        k,
        dim,
        hypothesis,
        near_cone_link,
        skeleton_links,
        f_vectors,
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::FieldConfig;

    fn opts() -> ShiftOptions {
        ShiftOptions::new(FieldConfig::default(), 5, 3)
    }

    /// `a * (b * C_4)` with the cycle on `3 4 5 6`.
    fn double_cone_over_cycle() -> Complex {
        let cycle = Complex::from_facets(
            &[vec!["3", "4"], vec!["4", "5"], vec!["5", "6"], vec!["3", "6"]],
            None,
        )
        .unwrap();
        cycle.cone("b").unwrap().cone("a").unwrap()
    }

    #[test]
    fn near_cone_examples() {
        let ex = fixtures::nonface_apex_example();
        assert!(is_near_cone(&ex, 0).unwrap().verdict);
        let cyc = fixtures::four_cycle();
        let c = is_near_cone(&cyc, 0).unwrap();
        assert!(!c.verdict);
        let (sigma, w) = c.violating_face.unwrap();
        // first failure in graded lex order: 23 with w = 2 needs 13
        assert_eq!((sigma, w), (Face::from_indices([1, 2]), 1));
        assert!(!cyc.contains(sigma.without(w).with(0)));
        // 34 with w = 4 fails for the same missing edge
        let other = Face::from_indices([2, 3]);
        assert!(!cyc.contains(other.without(3).with(0)));
        let cone = fixtures::hollow_triangle().cone("v").unwrap();
        assert!(is_near_cone(&cone, 0).unwrap().verdict);
        assert!(is_near_cone(&cyc, 9).is_err());
    }

    #[test]
    fn apex_sequence_reproduces_chain() {
        let ex = fixtures::nonface_apex_example();
        let seq = find_apex_sequence(&ex, 3).unwrap().unwrap();
        assert_eq!(seq.apex_labels(), ["1", "2", "3"]);
        seq.validate(&ex).unwrap();
        let gen = |facets: &[&[&str]], order: &[&str]| {
            let fs: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
            Complex::from_facets(&fs, Some(order)).unwrap()
        };
        assert_eq!(
            seq.chain[1],
            gen(
                &[&["2", "4", "6"], &["2", "3"], &["2", "5"], &["3", "4"], &["3", "5"], &["3", "6"]],
                &["2", "3", "4", "5", "6"]
            )
        );
        assert_eq!(
            seq.chain[2],
            gen(&[&["4", "6"], &["3", "4"], &["3", "5"], &["3", "6"]], &["3", "4", "5", "6"])
        );
        assert_eq!(seq.chain[3], gen(&[&["4", "6"], &["5"]], &["4", "5", "6"]));
    }

    #[test]
    fn apex_sequence_edge_cases() {
        let s3 = Complex::simplex(3);
        let seq = find_apex_sequence(&s3, 2).unwrap().unwrap();
        assert_eq!(seq.apex_labels(), ["1", "2"]);
        // a third apex would leave {∅}
        assert!(find_apex_sequence(&s3, 3).unwrap().is_none());
        assert!(find_apex_sequence_with(&s3, 3, true).unwrap().is_some());
        assert!(find_apex_sequence(&fixtures::four_cycle(), 1).unwrap().is_none());
        assert!(find_apex_sequence(&s3, 0).is_err());
        assert_eq!(largest_apex_length(&s3), 2);
        assert_eq!(largest_apex_length(&fixtures::four_cycle()), 0);
    }

    #[test]
    fn apex_face_examples() {
        let s3 = Complex::simplex(3);
        let seq = find_apex_sequence(&s3, 2).unwrap().unwrap();
        let r = check_apex_face(&s3, &seq);
        assert!(r.hypothesis && r.apex_is_face && !r.violation);

        let ex = fixtures::nonface_apex_example();
        let seq = find_apex_sequence(&ex, 3).unwrap().unwrap();
        let r = check_apex_face(&ex, &seq);
        assert_eq!((r.dim, r.hypothesis, r.apex_is_face, r.violation), (3, false, false, false));

        let cc = fixtures::hollow_triangle().cone("b").unwrap().cone("a").unwrap();
        let seq = find_apex_sequence(&cc, 2).unwrap().unwrap();
        assert_eq!(seq.apex_labels(), ["a", "b"]);
        let r = check_apex_face(&cc, &seq);
        assert!(r.hypothesis && r.apex_is_face);
    }

    #[test]
    fn skeleton_shifting_examples() {
        let s5 = Complex::simplex(5);
        let seq = find_apex_sequence(&s5, 2).unwrap().unwrap();
        for s in 0..=2 {
            let r = check_skeleton_shifting(&s5, &seq, s);
            assert!(r.in_range && r.holds);
        }
        let ex = fixtures::nonface_apex_example();
        let seq = find_apex_sequence(&ex, 3).unwrap().unwrap();
        for s in 0..=3 {
            assert!(!check_skeleton_shifting(&ex, &seq, s).in_range);
        }
        let dc = double_cone_over_cycle();
        let seq = find_apex_sequence(&dc, 2).unwrap().unwrap();
        assert_eq!(seq.apex_labels(), ["a", "b"]);
        for s in 0..=1 {
            let r = check_skeleton_shifting(&dc, &seq, s);
            assert!(r.in_range && r.holds, "{r:?}");
        }
    }

    #[test]
    fn link_commutation_on_cone() {
        let cone = fixtures::four_cycle().cone("v").unwrap();
        let seq = find_apex_sequence(&cone, 1).unwrap().unwrap();
        let r = check_link_commutation(&cone, &seq, &opts()).unwrap();
        assert!(r.near_cone_link && r.stable);
        assert!(!r.violation());
    }

    #[test]
    fn link_commutation_double_cone() {
        let dc = double_cone_over_cycle();
        let seq = find_apex_sequence(&dc, 2).unwrap().unwrap();
        let r = check_link_commutation(&dc, &seq, &opts()).unwrap();
        assert!(r.hypothesis && r.stable);
        assert!(!r.violation(), "{r:?}");
        // the link of the first two shifted vertices is the shifted cycle
        let shifted = exterior_shift_with(&dc, &opts()).unwrap().shifted;
        let lk = shifted.link(Face::prefix(2)).unwrap();
        assert_eq!(lk.labels(), ["3", "4", "5", "6"]);
        let want: Vec<Face> = [[0, 1], [0, 2], [0, 3], [1, 2]]
            .iter()
            .map(|e| Face::from_indices(e.iter().copied()))
            .collect();
        assert_eq!(lk.faces_slice(2), &want[..]);
        assert_eq!(lk.max_face_size(), 2);
    }

    #[test]
    fn link_commutation_vacuous_ranges() {
        let ex = fixtures::nonface_apex_example();
        let seq = find_apex_sequence(&ex, 3).unwrap().unwrap();
        let r = check_link_commutation(&ex, &seq, &opts()).unwrap();
        assert!(r.skeleton_links.is_empty() && r.f_vectors.is_empty());
        assert!(!r.violation());
    }
}
