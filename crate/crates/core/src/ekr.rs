//! Intersecting families of faces: star bounds, exact maxima and verdicts
//! for inequality (∗).

use serde::Serialize;

use crate::clique::{max_clique, Bitset};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{binomial, Face};
use crate::family::Family;
use crate::homology::{depth_by_skeleta, is_sequentially_cm};
use crate::linalg::FieldConfig;
use crate::nearcone::find_apex_sequence;
use crate::shifting::{exterior_shift_with, ShiftOptions, ShiftResult};

/// Largest candidate pool accepted by [`max_intersecting_family`].
pub const POOL_LIMIT: usize = 5000;

pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StarBound {
    pub value: u64,
    pub argmax: Face,
}

fn check_sizes(t: usize, sizes: &[usize]) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    if sizes.is_empty() {
        return Err(Error::InvalidParameter("size set is empty".into()));
    }
    if let Some(&s) = sizes.iter().find(|&&s| s < t) {
        return Err(Error::InvalidParameter(format!("size {s} is below t = {t}")));
    }
    Ok(())
}

fn dedup_sizes(sizes: &[usize]) -> Vec<usize> {
    let mut s = sizes.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Number of faces of size `s` containing `sigma`, i.e. f_{s-|σ|}(lk σ).
pub fn star_count(cx: &Complex, sigma: Face, s: usize) -> u64 {
    cx.faces_slice(s).iter().filter(|f| sigma.is_subset_of(**f)).count() as u64
}

/// max over t-faces σ of Σ_{s∈S} f_{s-t}(lk σ), with the lex-least maximizer.
pub fn star_bound(cx: &Complex, t: usize, sizes: &[usize]) -> Result<StarBound> {
    check_sizes(t, sizes)?;
    let sizes = dedup_sizes(sizes);
    let mut best: Option<StarBound> = None;
    for &sigma in cx.faces_slice(t) {
        let value = sizes.iter().map(|&s| star_count(cx, sigma, s)).sum();
        if best.is_none_or(|b| value > b.value) {
            best = Some(StarBound { value, argmax: sigma });
        }
    }
    best.ok_or(Error::NoFaceOfSize(t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxFamily {
    /// Size of the best family found.
    pub lower: usize,
    /// Proven upper bound; equals `lower` when `exact`.
    pub upper: usize,
    pub exact: bool,
    pub witness: Family,
    pub pool: usize,
    pub nodes: u64,
}

impl MaxFamily {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Exact maximum t-intersecting family inside ∪_{s∈S} Δ_(s). The search is a
/// maximum clique in the compatibility graph (|A∩B| ≥ t), which is the
/// maximum independent set of the conflict graph. When `budget` search nodes
/// are exhausted the result is a bracket `lower..=upper`.
pub fn max_intersecting_family(cx: &Complex, t: usize, sizes: &[usize], budget: u64) -> Result<MaxFamily> {
    check_sizes(t, sizes)?;
    let sizes = dedup_sizes(sizes);
    let pool: Vec<Face> = sizes.iter().flat_map(|&s| cx.faces_slice(s).iter().copied()).collect();
    if pool.len() > POOL_LIMIT {
        return Err(Error::PoolTooLarge {
            size: pool.len(),
            limit: POOL_LIMIT,
        });
    }
    let m = pool.len();
    let mut adj = vec![Bitset::new(m); m];
    for a in 0..m {
        for b in a + 1..m {
            if pool[a].intersection(pool[b]).size() >= t {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let out = max_clique(&adj, budget);
    Ok(MaxFamily {
        lower: out.clique.len(),
        upper: out.upper_bound,
        exact: out.exact,
        witness: out.clique.iter().map(|&i| pool[i]).collect(),
        pool: m,
        nodes: out.nodes,
    })
}

/// (t+1)(r-t+1)
pub fn facet_threshold(t: usize, r: usize) -> u64 {
    ((t + 1) * (r + 1 - t)) as u64
}

/// (r-t)·C(3r-2t-1, t+1) + r, saturating.
pub fn remark_threshold(t: usize, r: usize) -> u64 {
    let c = binomial(3 * r - 2 * t - 1, t + 1);
    ((r - t) as u64).saturating_mul(c).saturating_add(r as u64)
}

/// Which sufficient conditions for (∗) hold. `conjecture` is the open
/// conjecture's own hypothesis; the others are proved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub r: usize,
    pub min_facet_cardinality: usize,
    pub facet_threshold: u64,
    pub conjecture: bool,
    pub is_shifted: bool,
    /// Shifted and above the facet threshold.
    pub shifted: bool,
    pub remark_threshold: u64,
    pub remark: bool,
    /// Apex labels when a t-near-cone structure was found.
    pub apex: Option<Vec<String>>,
    pub depth: Option<i64>,
    pub depth_threshold: i64,
    pub depth_condition: bool,
    pub sequentially_cm: Option<bool>,
    pub scm_condition: bool,
}

impl Hypotheses {
    pub fn held(&self) -> Vec<&'static str> {
        [
            (self.conjecture, "conjecture"),
            (self.shifted, "shifted"),
            (self.remark, "remark"),
            (self.depth_condition, "near-cone-depth"),
            (self.scm_condition, "near-cone-scm"),
        ]
        .into_iter()
        .filter_map(|(h, name)| h.then_some(name))
        .collect()
    }

    pub fn any(&self) -> bool {
        !self.held().is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    /// (∗) fails although a sufficient hypothesis holds.
    Fails,
    HypothesisNotMet,
    /// The node budget ran out before (∗) was decided.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EkrReport {
    pub t: usize,
    pub sizes: Vec<usize>,
    pub star_bound: StarBound,
    pub brute: MaxFamily,
    pub witness_verified: bool,
    pub inequality: Option<bool>,
    pub hypotheses: Hypotheses,
    pub verdict: Verdict,
}

impl EkrReport {
    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Fails || !self.witness_verified
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BorgOptions {
    pub field: FieldConfig,
    pub budget: u64,
}

impl Default for BorgOptions {
    fn default() -> Self {
        BorgOptions {
            field: FieldConfig::default(),
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Apex sequence of length t together with the data the near-cone
/// hypotheses need.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearConeData {
    pub apex: Vec<String>,
    pub depth: i64,
    pub sequentially_cm: bool,
}

pub fn near_cone_data(cx: &Complex, t: usize, field: &FieldConfig) -> Result<Option<NearConeData>> {
    Ok(find_apex_sequence(cx, t)?.map(|seq| NearConeData {
        apex: seq.apex_labels(),
        depth: depth_by_skeleta(cx, field),
        sequentially_cm: is_sequentially_cm(cx, field).holds,
    }))
}

/// `near_cone` must describe a length-t apex sequence of `cx`, or be `None`
/// when there is none.
pub fn hypotheses_from(cx: &Complex, t: usize, r: usize, near_cone: Option<&NearConeData>) -> Hypotheses {
    let k = cx.min_facet_cardinality();
    let ft = facet_threshold(t, r);
    let conjecture = k as u64 >= ft;
    let is_shifted = cx.is_shifted();
    let rt = remark_threshold(t, r);
    let depth_threshold = ft as i64 - 1;
    Hypotheses {
        r,
        min_facet_cardinality: k,
        facet_threshold: ft,
        conjecture,
        is_shifted,
        shifted: is_shifted && conjecture,
        remark_threshold: rt,
        remark: k as u64 >= rt,
        apex: near_cone.map(|nc| nc.apex.clone()),
        depth: near_cone.map(|nc| nc.depth),
        depth_threshold,
        depth_condition: near_cone.is_some_and(|nc| nc.depth >= depth_threshold),
        sequentially_cm: near_cone.map(|nc| nc.sequentially_cm),
        scm_condition: near_cone.is_some_and(|nc| nc.sequentially_cm) && conjecture,
    }
}

pub fn hypotheses(cx: &Complex, t: usize, r: usize, field: &FieldConfig) -> Result<Hypotheses> {
    Ok(hypotheses_from(cx, t, r, near_cone_data(cx, t, field)?.as_ref()))
}

/// Both sides of (∗) for `t` and size set `sizes`, with every sufficient
/// hypothesis evaluated independently.
pub fn verify_borg(cx: &Complex, t: usize, sizes: &[usize], opts: &BorgOptions) -> Result<EkrReport> {
    check_sizes(t, sizes)?;
    let r = *sizes.iter().max().expect("sizes checked nonempty");
    let hypotheses = hypotheses(cx, t, r, &opts.field)?;
    assess(cx, t, sizes, opts.budget, hypotheses)
}

/// [`verify_borg`] with the hypotheses already evaluated for r = max S.
pub fn assess(cx: &Complex, t: usize, sizes: &[usize], budget: u64, hypotheses: Hypotheses) -> Result<EkrReport> {
    let star = star_bound(cx, t, sizes)?;
    let brute = max_intersecting_family(cx, t, sizes, budget)?;
    let witness_verified =
        brute.witness.is_t_intersecting(t) && brute.witness.iter().all(|f| cx.contains(f));
    let bound = star.value as usize;
    let inequality = if brute.lower > bound {
        Some(false)
    } else if brute.upper <= bound {
        Some(true)
    } else {
        None
    };
    let verdict = match inequality {
        Some(true) => Verdict::Holds,
        Some(false) if hypotheses.any() => Verdict::Fails,
        Some(false) => Verdict::HypothesisNotMet,
        None => Verdict::Inconclusive,
    };
    Ok(EkrReport {
        t,
        sizes: dedup_sizes(sizes),
        star_bound: star,
        brute,
        witness_verified,
        inequality,
        hypotheses,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominanceVerdict {
    Holds,
    Fails,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropEasyReport {
    pub t: usize,
    pub r: usize,
    /// f_{r-t}(lk_{Shift Δ}{u_1..u_t})
    pub shifted_side: u64,
    pub star_bound: StarBound,
    pub apex_is_face: bool,
    pub stable: bool,
    pub verdict: DominanceVerdict,
}

impl PropEasyReport {
    pub fn is_violation(&self) -> bool {
        self.verdict == DominanceVerdict::Fails
    }
}

/// Checks that the first t shifted vertices span a face of Shift Δ whose
/// r-face star dominates every t-face star of Δ.
pub fn check_prop_easy(cx: &Complex, t: usize, r: usize, opts: &ShiftOptions) -> Result<PropEasyReport> {
    let shift = exterior_shift_with(cx, opts)?;
    prop_easy_from(cx, t, r, &shift)
}

/// [`check_prop_easy`] against an already computed shift of `cx`.
pub fn prop_easy_from(cx: &Complex, t: usize, r: usize, shift: &ShiftResult) -> Result<PropEasyReport> {
    let star = star_bound(cx, t, &[r])?;
    let u = Face::prefix(t);
    let apex_is_face = shift.shifted.contains(u);
    let shifted_side = star_count(&shift.shifted, u, r);
    let verdict = if !shift.stable {
        DominanceVerdict::Unstable
    } else if apex_is_face && shifted_side >= star.value {
        DominanceVerdict::Holds
    } else {
        DominanceVerdict::Fails
    };
    Ok(PropEasyReport {
        t,
        r,
        shifted_side,
        star_bound: star,
        apex_is_face,
        stable: shift.stable,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_cycle, hollow_triangle, nonface_apex_example};

    #[test]
    fn star_bounds() {
        let s4 = Complex::simplex(4);
        assert_eq!(star_bound(&s4, 1, &[2]).unwrap(), StarBound { value: 3, argmax: Face::from_indices([0]) });
        assert_eq!(star_bound(&hollow_triangle(), 1, &[2]).unwrap().value, 2);
        assert_eq!(star_bound(&s4, 1, &[1, 2]).unwrap().value, 4);
        assert_eq!(star_bound(&s4, 5, &[5]), Err(Error::NoFaceOfSize(5)));
        assert!(star_bound(&s4, 2, &[1]).is_err());
    }

    #[test]
    fn star_bound_tie_is_lex_least() {
        // vertices 2 and 3 both lie on two edges; vertex 1 on one
        let cx = Complex::from_index_facets(3, &[&[1, 2], &[2, 3], &[3]]).unwrap();
        let sb = star_bound(&cx, 1, &[2]).unwrap();
        assert_eq!(sb, StarBound { value: 2, argmax: Face::from_indices([1]) });
    }

    #[test]
    fn maxima() {
        let s4 = Complex::simplex(4);
        let m = max_intersecting_family(&s4, 1, &[2], 1000).unwrap();
        assert!(m.exact);
        assert_eq!(m.lower, 3);
        assert!(m.witness.is_t_intersecting(1));
        assert_eq!(max_intersecting_family(&hollow_triangle(), 1, &[2], 1000).unwrap().value(), Some(3));
        assert_eq!(max_intersecting_family(&s4, 1, &[1, 2], 1000).unwrap().value(), Some(4));
        let s6 = Complex::simplex(6);
        assert_eq!(max_intersecting_family(&s6, 2, &[3], 10_000).unwrap().value(), Some(4));
    }

    #[test]
    fn budget_exhaustion_brackets() {
        let s8 = Complex::simplex(8);
        let m = max_intersecting_family(&s8, 1, &[3], 1).unwrap();
        assert!(!m.exact);
        assert_eq!(m.value(), None);
        assert!(m.lower <= 21 && 21 <= m.upper);
    }

    #[test]
    fn borg_verdicts() {
        let opts = BorgOptions::default();
        let rep = verify_borg(&Complex::simplex(4), 1, &[1, 2], &opts).unwrap();
        assert!(rep.hypotheses.conjecture);
        assert_eq!((rep.star_bound.value, rep.brute.lower), (4, 4));
        assert_eq!(rep.verdict, Verdict::Holds);

        let rep = verify_borg(&hollow_triangle(), 1, &[2], &opts).unwrap();
        assert_eq!((rep.star_bound.value, rep.brute.lower), (2, 3));
        assert!(!rep.hypotheses.any());
        assert_eq!(rep.verdict, Verdict::HypothesisNotMet);
        assert!(!rep.is_violation());

        let rep = verify_borg(&Complex::simplex(6), 2, &[3], &opts).unwrap();
        assert_eq!(rep.hypotheses.facet_threshold, 6);
        assert_eq!((rep.star_bound.value, rep.brute.lower), (4, 4));
        assert_eq!(rep.verdict, Verdict::Holds);
        assert!(rep.hypotheses.shifted && rep.hypotheses.depth_condition);
    }

    #[test]
    fn thresholds() {
        assert_eq!(facet_threshold(1, 2), 4);
        assert_eq!(facet_threshold(2, 3), 6);
        // (2-1)·C(3,2)+2
        assert_eq!(remark_threshold(1, 2), 5);
        assert_eq!(remark_threshold(2, 2), 2);
    }

    #[test]
    fn prop_easy() {
        let opts = ShiftOptions::new(FieldConfig::default(), 1, 3);
        let rep = check_prop_easy(&four_cycle(), 1, 2, &opts).unwrap();
        assert_eq!((rep.shifted_side, rep.star_bound.value), (3, 2));
        assert_eq!(rep.verdict, DominanceVerdict::Holds);
        let rep = check_prop_easy(&nonface_apex_example(), 1, 2, &opts).unwrap();
        assert_eq!(rep.verdict, DominanceVerdict::Holds);
        let shifted = Complex::from_index_facets(4, &[&[1, 2, 3], &[1, 4]]).unwrap();
        let rep = check_prop_easy(&shifted, 1, 2, &opts).unwrap();
        assert_eq!(rep.shifted_side, rep.star_bound.value);
    }
}
