//! Seeded generators for test corpora. Every generator draws from a
//! `ChaCha8Rng`, so a corpus is a pure function of its parameters and seed.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{k_subsets, Face};
use crate::family::Family;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Every complex on the ground set 1..n with at least one vertex, in order
/// of the bitmask of its nonempty faces. Ground vertices may lie in no face.
pub fn exhaustive(n: usize) -> Result<Vec<Complex>> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidParameter(format!("exhaustive corpus needs 1 <= n <= 4, got {n}")));
    }
    let universe: Vec<Face> = (1..1u64 << n).map(Face).collect();
    let slot = |f: Face| f.0 as usize - 1;
    let mut out = Vec::new();
    for choice in 1u64..1 << universe.len() {
        let chosen = |f: Face| f.is_empty() || choice >> slot(f) & 1 == 1;
        let closed = universe
            .iter()
            .filter(|f| chosen(**f))
            .all(|f| f.indices().all(|v| chosen(f.without(v))));
        if closed {
            let mut faces = vec![Face::EMPTY];
            faces.extend(universe.iter().copied().filter(|f| chosen(*f)));
            out.push(Complex::from_closed(numeric_labels(n), faces));
        }
    }
    Ok(out)
}

fn random_subset<R: Rng>(rng: &mut R, n: usize, size: usize) -> Face {
    Face::from_indices(index::sample(rng, n, size))
}

/// A random complex on 1..n in which every vertex lies in some face.
pub fn random_complex<R: Rng>(n: usize, rng: &mut R) -> Complex {
    assert!((1..=64).contains(&n));
    let max_size = (n - 1).max(1);
    let count = rng.gen_range(1..=2 * n);
    let mut gens: Vec<Face> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_subset(rng, n, size)
        })
        .collect();
    for v in 0..n {
        if !gens.iter().any(|g| g.contains(v)) {
            let j = rng.gen_range(0..gens.len());
            gens[j] = gens[j].with(v);
        }
    }
    Complex::generated(numeric_labels(n), gens).expect("generators fit the ground set")
}

pub fn random_corpus(n: usize, samples: usize, seed: u64) -> Vec<Complex> {
    let mut rng = rng(seed);
    (0..samples).map(|_| random_complex(n, &mut rng)).collect()
}

/// Sets of the same size below `g` in the componentwise (Gale) order.
fn gale_below(g: Face, n: usize) -> impl Iterator<Item = Face> {
    let top: Vec<usize> = g.indices().collect();
    k_subsets(n, top.len())
        .into_iter()
        .filter(move |h| h.indices().zip(&top).all(|(a, &b)| a <= b))
}

/// Smallest shifted complex containing the generators.
pub fn shift_closure(n: usize, gens: &[Face]) -> Complex {
    let closed: Vec<Face> = gens.iter().flat_map(|&g| gale_below(g, n)).collect();
    Complex::generated(numeric_labels(n), closed).expect("generators fit the ground set")
}

/// A random shifted complex on at most `n` vertices whose facets all have at
/// least `min_size` elements. Unused trailing vertices are dropped.
pub fn random_shifted<R: Rng>(n: usize, min_size: usize, rng: &mut R) -> Complex {
    assert!(min_size >= 1 && min_size <= n);
    let count = rng.gen_range(1..=3);
    let gens: Vec<Face> = (0..count)
        .map(|_| {
            let size = rng.gen_range(min_size..=n);
            random_subset(rng, n, size)
        })
        .collect();
    let used = gens.iter().map(|g| 64 - g.0.leading_zeros() as usize).max().unwrap_or(1);
    shift_closure(used, &gens)
}

/// Δ with a random set of facets removed, keeping at least one. Same ground
/// set as `cx`.
pub fn random_subcomplex<R: Rng>(cx: &Complex, rng: &mut R) -> Complex {
    let facets = cx.facets();
    let keep = rng.gen_range(0..facets.len());
    let removed: Vec<Face> = facets
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != keep && rng.gen_bool(0.5))
        .map(|(_, &f)| f)
        .collect();
    without_facets(cx, &removed)
}

fn without_facets(cx: &Complex, removed: &[Face]) -> Complex {
    let faces = cx.faces().iter().copied().filter(|f| !removed.contains(f)).collect();
    Complex::from_closed(cx.labels().to_vec(), faces)
}

/// Greedy t-intersecting family of r-subsets of [n] over a shuffled order.
pub fn random_intersecting_family<R: Rng>(n: usize, r: usize, t: usize, rng: &mut R) -> Family {
    assert!(t <= r && r <= n);
    let mut pool = k_subsets(n, r);
    pool.shuffle(rng);
    let mut chosen: Vec<Face> = Vec::new();
    for f in pool {
        if chosen.iter().all(|g| g.intersection(f).size() >= t) {
            chosen.push(f);
        }
    }
    chosen.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NearConeBase {
    /// Random complex on the non-apex vertices.
    #[default]
    Random,
    /// A skeleton of the simplex on the non-apex vertices; keeps depth high.
    Skeleton,
}

impl std::str::FromStr for NearConeBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<NearConeBase> {
        match s {
            "random" => Ok(NearConeBase::Random),
            "skeleton" => Ok(NearConeBase::Skeleton),
            _ => Err(Error::InvalidParameter(format!("unknown near-cone base `{s}`"))),
        }
    }
}

/// An i-near-cone on `n` vertices with apex sequence 1..i. Starting from a
/// base Δ(i) on the remaining vertices, each step adds the cone
/// v_j * L with L = Δ(j) minus random facets, so every face of Δ(j) has its
/// boundary in L.
pub fn random_near_cone<R: Rng>(i: usize, n: usize, base: NearConeBase, rng: &mut R) -> Complex {
    assert!(i >= 1 && n > i && n <= 64);
    let m = n - i;
    let base_cx = match base {
        NearConeBase::Random => random_complex(m, rng),
        NearConeBase::Skeleton => {
            let d = rng.gen_range(0..m as i64);
            Complex::simplex(m).skeleton(d)
        }
    };
    // shift base onto vertices i..n
    let mut faces: Vec<Face> = base_cx.faces().iter().map(|f| Face(f.0 << i)).collect();
    for j in (0..i).rev() {
        let current = Complex::from_closed(numeric_labels(n), faces.clone());
        let drop: Vec<Face> = current
            .facets()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.25))
            .collect();
        let link = without_facets(&current, &drop);
        faces.extend(link.faces().iter().map(|f| f.with(j)));
    }
    Complex::from_closed(numeric_labels(n), faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nearcone::find_apex_sequence;

    #[test]
    fn exhaustive_counts() {
        // downsets of the Boolean lattice minus the void complex and {∅}
        assert_eq!(exhaustive(1).unwrap().len(), 1);
        assert_eq!(exhaustive(2).unwrap().len(), 4);
        assert_eq!(exhaustive(3).unwrap().len(), 18);
        assert_eq!(exhaustive(4).unwrap().len(), 166);
        assert!(exhaustive(5).is_err());
    }

    #[test]
    fn random_is_reproducible_and_covers_vertices() {
        let a = random_corpus(6, 20, 7);
        assert_eq!(a, random_corpus(6, 20, 7));
        assert_ne!(a, random_corpus(6, 20, 8));
        assert!(a.iter().all(|cx| cx.vertex_set() == Face::prefix(6)));
    }

    #[test]
    fn shifted_generator() {
        let mut r = rng(3);
        for _ in 0..30 {
            let cx = random_shifted(8, 3, &mut r);
            assert!(cx.is_shifted());
            assert!(cx.min_facet_cardinality() >= 3);
        }
    }

    #[test]
    fn subcomplex_and_family() {
        let mut r = rng(5);
        for cx in random_corpus(5, 20, 1) {
            let sub = random_subcomplex(&cx, &mut r);
            assert!(sub.faces_within(&cx));
            assert!(!sub.facets().is_empty());
        }
        let fam = random_intersecting_family(6, 3, 2, &mut r);
        assert!(fam.is_t_intersecting(2) && !fam.is_empty());
    }

    #[test]
    fn near_cones_have_apex_sequences() {
        let mut r = rng(11);
        for i in 1..=3 {
            for base in [NearConeBase::Random, NearConeBase::Skeleton] {
                for _ in 0..10 {
                    let n = r.gen_range(i + 2..=9);
                    let cx = random_near_cone(i, n, base, &mut r);
                    let seq = find_apex_sequence(&cx, i).unwrap();
                    assert!(seq.is_some(), "{}", cx.to_facet_list());
                }
            }
        }
    }
}
