//! Reduced simplicial homology over GF(p), Cohen-Macaulay predicates and
//! depth.
//!
//! Chain groups are indexed by face cardinality: `C_s` is spanned by the
//! faces with `s` vertices and `∂_s : C_s → C_{s-1}`. The empty face spans
//! `C_0`, so `∂_1` is the augmentation and `β̃_{-1}({∅}) = 1`.

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::Result;
use crate::face::Face;
use crate::linalg::{FieldConfig, MatrixGFp, RankOracle};
use crate::par;
use crate::shifting::{exterior_shift_with, ShiftOptions};

/// `∂_s` as a `f_{s-1} × f_s` matrix; deleting the `j`-th smallest vertex
/// carries the sign `(-1)^j`.
pub fn boundary_matrix(cx: &Complex, s: usize, field: &FieldConfig) -> MatrixGFp {
    let rows = if s == 0 { &[][..] } else { cx.faces_slice(s - 1) };
    let cols = cx.faces_slice(s);
    let mut m = MatrixGFp::zeros(rows.len(), cols.len(), *field);
    for (c, &face) in cols.iter().enumerate() {
        for (j, v) in face.indices().enumerate() {
            let r = rows
                .binary_search_by(|g| g.lex_cmp(face.without(v)))
                .expect("boundary face present");
            let sign = if j % 2 == 0 { 1 } else { field.neg(1) };
            m.set(r, c, sign);
        }
    }
    m
}

/// Rank of `∂_s`, computed column by column.
fn boundary_rank(cx: &Complex, s: usize, field: &FieldConfig) -> usize {
    if s == 0 {
        return 0;
    }
    let rows = cx.faces_slice(s - 1);
    let cols = cx.faces_slice(s);
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let mut oracle = RankOracle::new(rows.len(), *field);
    let mut v = vec![0u64; rows.len()];
    for &face in cols {
        v.iter_mut().for_each(|x| *x = 0);
        for (j, w) in face.indices().enumerate() {
            let r = rows
                .binary_search_by(|g| g.lex_cmp(face.without(w)))
                .expect("boundary face present");
            v[r] = if j % 2 == 0 { 1 } else { field.neg(1) };
        }
        oracle.insert_unchecked(&v);
        if oracle.is_full() {
            break;
        }
    }
    oracle.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub prime: u64,
    /// `betti[i + 1]` is `β̃_i` for `i = -1, .., dim`.
    pub betti: Vec<u64>,
    /// `chain_dims[s] = f_s`.
    pub chain_dims: Vec<u64>,
    /// `boundary_ranks[s]` is the rank of `∂_s`; entry 0 is 0.
    pub boundary_ranks: Vec<u64>,
}

impl BettiTable {
    /// `β̃_i`, zero outside the stored range.
    pub fn get(&self, i: i64) -> u64 {
        if i < -1 {
            return 0;
        }
        self.betti.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Smallest `i` with `β̃_i ≠ 0`.
    pub fn first_nonzero(&self) -> Option<i64> {
        self.betti.iter().position(|&b| b != 0).map(|p| p as i64 - 1)
    }

    /// `Σ (-1)^i β̃_i`.
    pub fn euler(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(p, &b)| if p % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn reduced_betti(cx: &Complex, field: &FieldConfig) -> BettiTable {
    let top = cx.max_face_size();
    let chain_dims: Vec<u64> = (0..=top).map(|s| cx.faces_slice(s).len() as u64).collect();
    let mut boundary_ranks = vec![0u64; top + 2];
    for (s, slot) in boundary_ranks.iter_mut().enumerate().take(top + 1).skip(1) {
        *slot = boundary_rank(cx, s, field) as u64;
    }
    // β̃_i lives in cardinality s = i + 1
    let betti = (0..=top)
        .map(|s| chain_dims[s] - boundary_ranks[s] - boundary_ranks[s + 1])
        .collect();
    boundary_ranks.truncate(top + 1);
    BettiTable {
        prime: field.p(),
        betti,
        chain_dims,
        boundary_ranks,
    }
}

/// A face whose link has nonvanishing homology in a degree the predicate
/// requires to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyWitness {
    pub face: Face,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmVerdict {
    pub holds: bool,
    pub witness: Option<HomologyWitness>,
}

/// Per-face link data: first nonvanishing degree and link dimension.
fn link_profile(cx: &Complex, field: &FieldConfig) -> Vec<(Face, Option<i64>, i64)> {
    par::map(cx.faces(), |&sigma| {
        let lk = cx.link(sigma).expect("face of complex");
        let b = reduced_betti(&lk, field);
        (sigma, b.first_nonzero(), lk.dim())
    })
}

/// `H̃_i(lk σ) = 0` for all `i < dim lk σ` and all faces `σ`, `∅` included.
/// The witness is the first failing face in graded lexicographic order.
pub fn is_cohen_macaulay(cx: &Complex, field: &FieldConfig) -> CmVerdict {
    let profile = link_profile(cx, field);
    let witness = profile.into_iter().find_map(|(face, first, dim)| match first {
        Some(i) if i < dim => Some(HomologyWitness { face, degree: i }),
        _ => None,
    });
    CmVerdict {
        holds: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqCmVerdict {
    pub holds: bool,
    /// Pure skeleton dimension and the CM witness inside it.
    pub failure: Option<(i64, HomologyWitness)>,
}

/// Every pure `r`-skeleton is Cohen-Macaulay.
pub fn is_sequentially_cm(cx: &Complex, field: &FieldConfig) -> SeqCmVerdict {
    for r in 0..=cx.dim() {
        let pure = cx.pure_skeleton(r).expect("dimension in range");
        let v = is_cohen_macaulay(&pure, field);
        if let Some(w) = v.witness {
            return SeqCmVerdict {
                holds: false,
                failure: Some((r, w)),
            };
        }
    }
    SeqCmVerdict {
        holds: true,
        failure: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthWitness {
    /// The level `d` that fails.
    pub level: i64,
    pub face: Face,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    /// Largest `d ≤ dim` with `Δ^{(d)}` Cohen-Macaulay.
    pub depth_skeleton: i64,
    /// Largest `d` with `H̃_i(lk σ) = 0` for all `σ` and `i < d - |σ|`.
    pub depth_links: i64,
    /// Minimum facet dimension of the shifted complex; `None` when the shift
    /// was unstable.
    pub depth_shift: Option<i64>,
    pub shift_stable: bool,
    pub agree: bool,
    /// One witness per level above the depth, up to `dim`.
    pub witnesses: Vec<DepthWitness>,
}

/// Largest `d` with a CM `d`-skeleton, scanning every level up to `dim`.
pub fn depth_by_skeleta(cx: &Complex, field: &FieldConfig) -> i64 {
    let mut best = -1;
    for d in 0..=cx.dim() {
        if is_cohen_macaulay(&cx.skeleton(d), field).holds {
            best = d;
        }
    }
    best
}

/// Depth from link homology, plus the witnesses for every failing level.
pub fn depth_by_links(cx: &Complex, field: &FieldConfig) -> (i64, Vec<DepthWitness>) {
    let profile = link_profile(cx, field);
    let depth = profile
        .iter()
        .filter_map(|&(sigma, first, _)| first.map(|i| i + sigma.size() as i64))
        .min()
        .unwrap_or(cx.dim())
        .min(cx.dim());
    let witnesses = (depth + 1..=cx.dim())
        .filter_map(|level| {
            profile.iter().find_map(|&(face, first, _)| match first {
                Some(i) if i < level - face.size() as i64 => Some(DepthWitness {
                    level,
                    face,
                    degree: i,
                }),
                _ => None,
            })
        })
        .collect();
    (depth, witnesses)
}

pub fn depth(cx: &Complex, opts: &ShiftOptions) -> Result<DepthReport> {
    let field = &opts.field;
    let depth_skeleton = depth_by_skeleta(cx, field);
    let (depth_links, witnesses) = depth_by_links(cx, field);
    let shifted = exterior_shift_with(cx, opts)?;
    let shift_stable = shifted.stable;
    let depth_shift = shift_stable.then(|| shifted.shifted.min_facet_dim());
    let agree = depth_skeleton == depth_links && depth_shift.is_none_or(|d| d == depth_skeleton);
    Ok(DepthReport {
        depth_skeleton,
        depth_links,
        depth_shift,
        shift_stable,
        agree,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld() -> FieldConfig {
        FieldConfig::default()
    }

    fn hollow_triangle() -> Complex {
        Complex::from_index_facets(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap()
    }

    fn f(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().map(|v| v - 1))
    }

    #[test]
    fn boundary_matrix_shapes() {
        let pts = Complex::from_index_facets(2, &[&[1], &[2]]).unwrap();
        let d1 = boundary_matrix(&pts, 1, &fld());
        assert_eq!((d1.rows(), d1.cols()), (1, 2));
        assert_eq!(d1.row(0), &[1, 1]);

        let t = hollow_triangle();
        let d2 = boundary_matrix(&t, 2, &fld());
        assert_eq!((d2.rows(), d2.cols()), (3, 3));
        for c in 0..3 {
            let col: Vec<u64> = (0..3).map(|r| d2.get(r, c)).filter(|&x| x != 0).collect();
            assert_eq!(col.len(), 2);
            assert_eq!(fld().add(col[0], col[1]), 0);
        }
    }

    #[test]
    fn boundary_squares_to_zero_on_example() {
        let c = crate::fixtures::nonface_apex_example();
        for p in [2, crate::DEFAULT_PRIME] {
            let field = FieldConfig::new(p).unwrap();
            for s in 2..=c.max_face_size() {
                let a = boundary_matrix(&c, s - 1, &field);
                let b = boundary_matrix(&c, s, &field);
                assert!(a.mul(&b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn betti_examples() {
        let t = reduced_betti(&hollow_triangle(), &fld());
        assert_eq!(t.boundary_ranks, vec![0, 1, 2]);
        assert_eq!((t.get(-1), t.get(0), t.get(1)), (0, 0, 1));
        let pts = reduced_betti(&Complex::from_index_facets(2, &[&[1], &[2]]).unwrap(), &fld());
        assert_eq!(pts.get(0), 1);
        let s = reduced_betti(&Complex::simplex(5), &fld());
        assert!(s.betti.iter().all(|&b| b == 0));
        let empty = Complex::simplex(1).link(f(&[1])).unwrap();
        assert_eq!(reduced_betti(&empty, &fld()).betti, vec![1]);
    }

    #[test]
    fn euler_identity_on_example() {
        let c = crate::fixtures::nonface_apex_example();
        let b = reduced_betti(&c, &fld());
        assert_eq!(b.euler(), c.f_vector().reduced_euler());
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // six-vertex RP^2: H_1 has 2-torsion, so β̃_1 over GF(2) is 1 and 0 otherwise
        let rp2 = Complex::from_index_facets(
            6,
            &[
                &[1, 2, 3],
                &[1, 3, 4],
                &[1, 4, 5],
                &[1, 5, 6],
                &[1, 2, 6],
                &[2, 3, 5],
                &[2, 4, 5],
                &[2, 4, 6],
                &[3, 4, 6],
                &[3, 5, 6],
            ],
        )
        .unwrap();
        let two = reduced_betti(&rp2, &FieldConfig::new(2).unwrap());
        let big = reduced_betti(&rp2, &fld());
        assert_eq!((two.get(1), two.get(2)), (1, 1));
        assert_eq!((big.get(1), big.get(2)), (0, 0));
        assert!(is_cohen_macaulay(&rp2, &fld()).holds);
        assert!(!is_cohen_macaulay(&rp2, &FieldConfig::new(2).unwrap()).holds);
    }

    #[test]
    fn cohen_macaulay_examples() {
        assert!(is_cohen_macaulay(&hollow_triangle(), &fld()).holds);
        let two_edges = Complex::from_index_facets(4, &[&[1, 2], &[3, 4]]).unwrap();
        let v = is_cohen_macaulay(&two_edges, &fld());
        assert!(!v.holds);
        assert_eq!(v.witness, Some(HomologyWitness { face: Face::EMPTY, degree: 0 }));
        let mixed = Complex::from_index_facets(3, &[&[1, 2], &[3]]).unwrap();
        let v = is_cohen_macaulay(&mixed, &fld());
        assert_eq!(v.witness, Some(HomologyWitness { face: Face::EMPTY, degree: 0 }));
    }

    #[test]
    fn sequentially_cm_examples() {
        let mixed = Complex::from_index_facets(3, &[&[1, 2], &[3]]).unwrap();
        assert!(is_sequentially_cm(&mixed, &fld()).holds);
        let two_edges = Complex::from_index_facets(4, &[&[1, 2], &[3, 4]]).unwrap();
        let v = is_sequentially_cm(&two_edges, &fld());
        assert!(!v.holds);
        assert_eq!(v.failure.map(|f| f.0), Some(1));
    }

    #[test]
    fn depth_examples() {
        let opts = ShiftOptions::new(fld(), 1, 3);
        let pts = Complex::from_index_facets(2, &[&[1], &[2]]).unwrap();
        let r = depth(&pts, &opts).unwrap();
        assert_eq!((r.depth_skeleton, r.depth_links, r.depth_shift), (0, 0, Some(0)));
        let r = depth(&hollow_triangle(), &opts).unwrap();
        assert_eq!((r.depth_skeleton, r.depth_links, r.depth_shift), (1, 1, Some(1)));
        assert!(r.agree && r.witnesses.is_empty());
        for n in 1..=5 {
            let r = depth(&Complex::simplex(n), &opts).unwrap();
            assert_eq!(r.depth_skeleton, n as i64 - 1);
            assert!(r.agree);
        }
        let two_edges = Complex::from_index_facets(4, &[&[1, 2], &[3, 4]]).unwrap();
        let r = depth(&two_edges, &opts).unwrap();
        assert_eq!(r.depth_skeleton, 0);
        assert!(r.agree);
        assert_eq!(
            r.witnesses,
            vec![DepthWitness { level: 1, face: Face::EMPTY, degree: 0 }]
        );
    }

    #[test]
    fn depth_of_empty_complex() {
        let empty = Complex::simplex(1).link(f(&[1])).unwrap();
        let r = depth(&empty, &ShiftOptions::default()).unwrap();
        assert_eq!((r.depth_skeleton, r.depth_links), (-1, -1));
    }
}
