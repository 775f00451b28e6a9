//! Exterior algebraic shifting over GF(p).
//!
//! For a generic invertible `g`, the `k`-faces of `Shift Δ` are the `k`-sets
//! `S`, scanned in lexicographic order, whose wedge `g e_{s_1} ∧ … ∧ g e_{s_k}`
//! is independent of the earlier wedges modulo the span of the non-faces
//! `e_T`, `T ∉ Δ`. Working modulo that span amounts to keeping only the
//! coordinates indexed by faces of `Δ`, and each coordinate is a `k × k`
//! minor of `g`.
//!
//! A random matrix over a large prime stands in for a generic one. Every
//! shift is repeated over several seeds and only a unanimous answer is
//! reported as stable.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{k_subsets, Face};
use crate::family::Family;
use crate::linalg::{random_invertible, FieldConfig, MatrixGFp, RankOracle};
use crate::par;

/// Ground-set limit for shifting; `C(n, k)` candidate rows per layer.
pub const MAX_SHIFT_VERTICES: usize = 20;

/// Fewest agreeing trials for a result to count as stable.
pub const MIN_STABLE_TRIALS: usize = 3;

pub const DEFAULT_TRIALS: usize = 3;

/// Order in which candidate `k`-sets are offered to the rank oracle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetOrder {
    /// Lexicographic on sorted tuples, first vertex smallest.
    #[default]
    Lex,
    /// The reverse of [`SubsetOrder::Lex`].
    ReverseLex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftOptions {
    pub field: FieldConfig,
    pub seed: u64,
    pub trials: usize,
    pub order: SubsetOrder,
}

impl Default for ShiftOptions {
    fn default() -> Self {
        ShiftOptions {
            field: FieldConfig::default(),
            seed: 0,
            trials: DEFAULT_TRIALS,
            order: SubsetOrder::Lex,
        }
    }
}

impl ShiftOptions {
    pub fn new(field: FieldConfig, seed: u64, trials: usize) -> ShiftOptions {
        ShiftOptions {
            field,
            seed,
            trials,
            order: SubsetOrder::Lex,
        }
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.trials as u64)
            .map(|i| self.seed.wrapping_add(i))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftResult {
    /// On the same ground set as the input.
    pub shifted: Complex,
    pub prime: u64,
    pub seeds: Vec<u64>,
    /// Trials that produced `shifted`.
    pub trials_agreed: usize,
    /// Unanimous over at least [`MIN_STABLE_TRIALS`] trials.
    pub stable: bool,
    /// `per_size_kept[k]` lists the kept `k`-sets in scan order.
    pub per_size_kept: Vec<Vec<Face>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyShiftResult {
    pub family: Family,
    pub underlying: ShiftResult,
}

/// Kept sets for every cardinality under one matrix. The second component is
/// false when the kept sets are not downward closed, which only happens for a
/// non-generic matrix.
fn shift_with_matrix(cx: &Complex, g: &MatrixGFp, order: SubsetOrder) -> (Vec<Vec<Face>>, bool) {
    let n = cx.n();
    let top = cx.max_face_size();
    let field = g.field();
    let layers: Vec<Vec<Face>> = par::map_range(0..top + 1, |k| {
        let columns = cx.faces_slice(k);
        if k == 0 {
            return vec![Face::EMPTY];
        }
        let mut candidates = k_subsets(n, k);
        if order == SubsetOrder::ReverseLex {
            candidates.reverse();
        }
        let mut oracle = RankOracle::new(columns.len(), field);
        let mut kept = Vec::with_capacity(columns.len());
        let mut row = vec![0u64; columns.len()];
        let mut buf = Vec::with_capacity(k * k);
        for s in candidates {
            if oracle.is_full() {
                break;
            }
            for (slot, &t) in row.iter_mut().zip(columns) {
                buf.clear();
                for r in t.indices() {
                    for c in s.indices() {
                        buf.push(g.get(r, c));
                    }
                }
                *slot = crate::linalg::det_in_place(&mut buf, k, &field);
            }
            if oracle.insert_unchecked(&row) {
                kept.push(s);
            }
        }
        kept
    });
    let all: HashSet<Face> = layers.iter().flatten().copied().collect();
    let closed = all
        .iter()
        .all(|f| f.indices().all(|v| all.contains(&f.without(v))));
    (layers, closed)
}

/// Exterior shift with the default subset order.
pub fn exterior_shift(cx: &Complex, field: &FieldConfig, seed: u64, trials: usize) -> Result<ShiftResult> {
    exterior_shift_with(cx, &ShiftOptions::new(*field, seed, trials))
}

pub fn exterior_shift_with(cx: &Complex, opts: &ShiftOptions) -> Result<ShiftResult> {
    if cx.n() > MAX_SHIFT_VERTICES {
        return Err(Error::TooManyVertices {
            count: cx.n(),
            limit: MAX_SHIFT_VERTICES,
        });
    }
    if opts.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let seeds = opts.seeds();
    if cx.n() == 0 {
        return Ok(ShiftResult {
            shifted: cx.clone(),
            prime: opts.field.p(),
            trials_agreed: seeds.len(),
            stable: seeds.len() >= MIN_STABLE_TRIALS,
            seeds,
            per_size_kept: vec![vec![Face::EMPTY]],
        });
    }
    let runs: Vec<Result<(Vec<Vec<Face>>, bool)>> = par::map(&seeds, |&s| {
        let g = random_invertible(cx.n(), opts.field, s)?;
        Ok(shift_with_matrix(cx, &g, opts.order))
    });
    let runs: Vec<(Vec<Vec<Face>>, bool)> = runs.into_iter().collect::<Result<_>>()?;

    // majority vote, earliest run wins ties
    let mut best = 0usize;
    let mut best_count = 0usize;
    for (i, run) in runs.iter().enumerate() {
        let count = runs.iter().filter(|r| r.0 == run.0).count();
        if count > best_count {
            best = i;
            best_count = count;
        }
    }
    let (kept, closed) = runs[best].clone();
    let faces: Vec<Face> = kept.iter().flatten().copied().collect();
    let shifted = if closed {
        Complex::from_closed(cx.labels().to_vec(), faces)
    } else {
        Complex::generated(cx.labels().to_vec(), faces)?
    };
    let stable = closed && best_count == runs.len() && best_count >= MIN_STABLE_TRIALS;
    Ok(ShiftResult {
        shifted,
        prime: opts.field.p(),
        seeds,
        trials_agreed: best_count,
        stable,
        per_size_kept: kept,
    })
}

/// `Shift 𝒜 = Shift(Δ(𝒜))_(r)` for an `r`-family over `{0, .., n-1}`.
pub fn shift_family(family: &Family, n: usize, field: &FieldConfig, seed: u64) -> Result<FamilyShiftResult> {
    shift_family_with(family, n, &ShiftOptions::new(*field, seed, DEFAULT_TRIALS))
}

pub fn shift_family_with(family: &Family, n: usize, opts: &ShiftOptions) -> Result<FamilyShiftResult> {
    if family.is_empty() {
        return Err(Error::EmptyFacetList);
    }
    let r = family.uniform_size().ok_or(Error::MixedCardinalities)?;
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let cx = Complex::generated(labels, family.iter())?;
    let underlying = exterior_shift_with(&cx, opts)?;
    Ok(FamilyShiftResult {
        family: underlying.shifted.faces_of_size(r),
        underlying,
    })
}

/// Outcome of the shifting-axiom checks; `None` marks an axiom whose
/// premise was not supplied or does not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub s1_shifted: bool,
    /// Only evaluated when the input is shifted.
    pub s2_fixed_point: Option<bool>,
    pub s3_f_vector: bool,
    pub s4_monotone: Option<bool>,
    pub s5_intersecting: Option<bool>,
    /// Every shift involved was stable.
    pub stable: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.s1_shifted
            && self.s3_f_vector
            && self.s2_fixed_point != Some(false)
            && self.s4_monotone != Some(false)
            && self.s5_intersecting != Some(false)
    }
}

/// Re-express `sub` on the ground set of `ambient`, matching labels.
pub fn embed(sub: &Complex, ambient: &Complex) -> Result<Complex> {
    if !sub.is_subcomplex_of(ambient) {
        return Err(Error::NotASubcomplex);
    }
    let faces: Vec<Face> = sub
        .faces()
        .iter()
        .map(|f| {
            Face::from_indices(f.indices().map(|v| ambient.index_of(sub.label(v)).expect("checked")))
        })
        .collect();
    Ok(Complex::from_closed(ambient.labels().to_vec(), faces))
}

/// Evaluate S1–S5 on `cx`, a subcomplex `sub`, and a `t`-intersecting family
/// over `cx`'s ground set.
pub fn check_axioms(
    cx: &Complex,
    sub: Option<&Complex>,
    family: Option<(&Family, usize)>,
    opts: &ShiftOptions,
) -> Result<AxiomReport> {
    let main = exterior_shift_with(cx, opts)?;
    let mut stable = main.stable;
    let s1_shifted = main.shifted.is_shifted();
    let s2_fixed_point = cx.is_shifted().then(|| main.shifted.same_faces(cx));
    let s3_f_vector = main.shifted.f_vector() == cx.f_vector();
    let s4_monotone = match sub {
        Some(sub) => {
            let sub = embed(sub, cx)?;
            let shifted_sub = exterior_shift_with(&sub, opts)?;
            stable &= shifted_sub.stable;
            Some(shifted_sub.shifted.faces_within(&main.shifted))
        }
        None => None,
    };
    let s5_intersecting = match family {
        Some((fam, t)) => {
            if !fam.is_t_intersecting(t) {
                return Err(Error::NotIntersecting(t));
            }
            let shifted = shift_family_with(fam, cx.n(), opts)?;
            stable &= shifted.underlying.stable;
            Some(shifted.family.len() == fam.len() && shifted.family.is_t_intersecting(t))
        }
        None => None,
    };
    Ok(AxiomReport {
        s1_shifted,
        s2_fixed_point,
        s3_f_vector,
        s4_monotone,
        s5_intersecting,
        stable,
    })
}
