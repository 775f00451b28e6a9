//! Seeded sweeps: generate a corpus, run checks on every instance, and
//! assemble a report whose order depends only on instance ids.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::Complex;
use crate::corpus::{self, NearConeBase};
use crate::ekr::{self, NearConeData, Verdict, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::homology::{self, boundary_matrix, reduced_betti};
use crate::linalg::{FieldConfig, DEFAULT_PRIME};
use crate::nearcone::{check_apex_face, check_link_commutation, find_apex_sequence, find_apex_sequence_with};
use crate::par;
use crate::shifting::{check_axioms, exterior_shift_with, ShiftOptions, DEFAULT_TRIALS, MAX_SHIFT_VERTICES};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    Exhaustive,
    Random,
    Shifted,
    NearCone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Axioms,
    Depth,
    Homology,
    ApexFace,
    LinkCommutation,
    Ekr,
    PropEasy,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Axioms,
        Check::Depth,
        Check::Homology,
        Check::ApexFace,
        Check::LinkCommutation,
        Check::Ekr,
        Check::PropEasy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Axioms => "axioms",
            Check::Depth => "depth",
            Check::Homology => "homology",
            Check::ApexFace => "apex-face",
            Check::LinkCommutation => "link-commutation",
            Check::Ekr => "ekr",
            Check::PropEasy => "prop-easy",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check `{s}`")))
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Generator> {
        match s {
            "exhaustive" => Ok(Generator::Exhaustive),
            "random" => Ok(Generator::Random),
            "shifted" => Ok(Generator::Shifted),
            "near-cone" => Ok(Generator::NearCone),
            _ => Err(Error::InvalidParameter(format!("unknown generator `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub generator: Generator,
    /// Largest vertex count.
    pub n: usize,
    /// Smallest vertex count; instance sizes are drawn from `n_min..=n`.
    pub n_min: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub t: Vec<usize>,
    pub r: Vec<usize>,
    /// Run every S ⊆ [t, r] containing r, not just S = {r}.
    pub all_size_sets: bool,
    /// Apex length for the near-cone generator and checks.
    pub i: usize,
    /// Least generator size for the shifted generator.
    pub min_size: usize,
    pub base: NearConeBase,
    pub prime: u64,
    pub trials: usize,
    pub budget: u64,
    /// Worker threads; 0 uses the ambient pool. Does not affect results.
    #[serde(skip)]
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            generator: Generator::Random,
            n: 6,
            n_min: None,
            samples: 20,
            seed: 0,
            checks: vec![Check::Axioms],
            t: vec![1],
            r: vec![2],
            all_size_sets: false,
            i: 1,
            min_size: 1,
            base: NearConeBase::Random,
            prime: DEFAULT_PRIME,
            trials: DEFAULT_TRIALS,
            budget: DEFAULT_BUDGET,
            workers: 0,
        }
    }
}

impl SweepConfig {
    fn n_range(&self) -> (usize, usize) {
        let default_lo = match self.generator {
            Generator::NearCone => (self.i + 2).min(self.n),
            Generator::Shifted => self.min_size.max(1),
            _ => self.n,
        };
        (self.n_min.unwrap_or(default_lo), self.n)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        let (lo, hi) = self.n_range();
        if lo == 0 || lo > hi {
            return bad(format!("empty vertex range {lo}..={hi}"));
        }
        if hi > MAX_SHIFT_VERTICES {
            return Err(Error::TooManyVertices {
                count: hi,
                limit: MAX_SHIFT_VERTICES,
            });
        }
        if self.t.is_empty() || self.t.contains(&0) {
            return bad("t values must be nonempty and positive".into());
        }
        if self.r.is_empty() {
            return bad("r values must be nonempty".into());
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        match self.generator {
            Generator::Exhaustive if hi > 4 => bad("exhaustive corpus needs n <= 4".into()),
            Generator::Shifted if self.min_size == 0 || self.min_size > lo => {
                bad(format!("min_size must lie in 1..={lo}"))
            }
            Generator::NearCone if self.i == 0 || lo <= self.i => {
                bad(format!("near-cones need i >= 1 and n > i, got i={} n_min={lo}", self.i))
            }
            _ => Ok(()),
        }?;
        FieldConfig::new(self.prime)?;
        Ok(())
    }

    pub fn field(&self) -> FieldConfig {
        FieldConfig::new(self.prime).expect("validated prime")
    }

    pub fn shift_options(&self) -> ShiftOptions {
        ShiftOptions::new(self.field(), self.seed, self.trials)
    }
}

/// The corpus a configuration describes, in instance-id order.
pub fn generate(cfg: &SweepConfig) -> Result<Vec<Complex>> {
    cfg.validate()?;
    if cfg.generator == Generator::Exhaustive {
        return corpus::exhaustive(cfg.n);
    }
    let (lo, hi) = cfg.n_range();
    let mut rng = corpus::rng(cfg.seed);
    Ok((0..cfg.samples)
        .map(|_| {
            let n = rng.gen_range(lo..=hi);
            match cfg.generator {
                Generator::Random => corpus::random_complex(n, &mut rng),
                Generator::Shifted => corpus::random_shifted(n, cfg.min_size, &mut rng),
                Generator::NearCone => corpus::random_near_cone(cfg.i, n, cfg.base, &mut rng),
                Generator::Exhaustive => unreachable!(),
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A hypothesis applied and its conclusion held.
    Pass,
    /// Nothing to test: a hypothesis failed or a premise is absent.
    Vacuous,
    Violation,
    /// Budget ran out before a decision.
    Inconclusive,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub check: Check,
    pub case: String,
    pub status: Status,
    /// Hypotheses or sub-properties exercised.
    pub tags: Vec<String>,
    pub detail: Value,
}

impl Outcome {
    fn new(check: Check, case: impl Into<String>, status: Status, detail: Value) -> Outcome {
        Outcome {
            check,
            case: case.into(),
            status,
            tags: Vec::new(),
            detail,
        }
    }

    fn tagged<I: IntoIterator<Item = S>, S: Into<String>>(mut self, tags: I) -> Outcome {
        self.tags.extend(tags.into_iter().map(Into::into));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceResult {
    pub id: usize,
    pub input_digest: String,
    pub vertices: usize,
    pub f_vector: Vec<u64>,
    pub results: Vec<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub instance: usize,
    pub check: Check,
    pub case: String,
    pub complex: String,
    pub detail: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub vacuous: usize,
    pub violation: usize,
    pub inconclusive: usize,
    pub unstable: usize,
    /// Outcomes carrying each tag, counted over passes only.
    pub covered: BTreeMap<String, usize>,
}

impl Tally {
    fn add(&mut self, o: &Outcome) {
        match o.status {
            Status::Pass => {
                self.pass += 1;
                for t in &o.tags {
                    *self.covered.entry(t.clone()).or_default() += 1;
                }
            }
            Status::Vacuous => self.vacuous += 1,
            Status::Violation => self.violation += 1,
            Status::Inconclusive => self.inconclusive += 1,
            Status::Unstable => self.unstable += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub config: SweepConfig,
    pub instances: Vec<InstanceResult>,
    pub violations: Vec<Violation>,
    pub inconclusive: usize,
    pub unstable: usize,
    pub summary: BTreeMap<String, Tally>,
    pub timing: Timing,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn tally(&self, check: Check) -> Tally {
        self.summary.get(check.name()).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with timing removed; identical across reruns of the same
    /// configuration.
    pub fn reproducible_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

/// Hex SHA-256 of the canonical facet-list text.
pub fn input_digest(cx: &Complex) -> String {
    hex::encode(Sha256::digest(cx.to_facet_list().as_bytes()))
}

/// Read a complex in facet-list format; `-` reads standard input.
pub fn parse_complex(path: &Path) -> Result<Complex> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    };
    Complex::parse_facet_list(&text)
}

struct Ctx<'a> {
    id: usize,
    cfg: &'a SweepConfig,
    field: FieldConfig,
    shift: ShiftOptions,
}

impl Ctx<'_> {
    fn rng(&self) -> rand_chacha::ChaCha8Rng {
        corpus::rng(self.cfg.seed ^ (self.id as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

fn detail<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("check results serialize")
}

fn axioms(cx: &Complex, ctx: &Ctx) -> Result<Vec<Outcome>> {
    let mut rng = ctx.rng();
    let sub = corpus::random_subcomplex(cx, &mut rng);
    let t = ctx.cfg.t[ctx.id % ctx.cfg.t.len()];
    let n = cx.n();
    let family = (n >= t).then(|| {
        let r = rng.gen_range(t..=n.min(t + 2));
        corpus::random_intersecting_family(n, r, t, &mut rng)
    });
    let rep = check_axioms(cx, Some(&sub), family.as_ref().map(|f| (f, t)), &ctx.shift)?;
    let status = if !rep.stable {
        Status::Unstable
    } else if rep.all_hold() {
        Status::Pass
    } else {
        Status::Violation
    };
    let mut tags = vec!["s1", "s3"];
    tags.extend(rep.s2_fixed_point.map(|_| "s2"));
    tags.extend(rep.s4_monotone.map(|_| "s4"));
    tags.extend(rep.s5_intersecting.map(|_| "s5"));
    Ok(vec![Outcome::new(Check::Axioms, "s1-s5", status, detail(&rep)).tagged(tags)])
}

fn depth(cx: &Complex, ctx: &Ctx) -> Result<Vec<Outcome>> {
    let rep = homology::depth(cx, &ctx.shift)?;
    let status = if !rep.shift_stable {
        Status::Unstable
    } else if rep.agree {
        Status::Pass
    } else {
        Status::Violation
    };
    // depth depends on the field; record where GF(2) disagrees, judge nothing
    let depth_p2 = homology::depth_by_skeleta(cx, &FieldConfig::new(2)?);
    let mut d = detail(&rep);
    d["depth_p2"] = json!(depth_p2);
    let out = Outcome::new(Check::Depth, "agreement", status, d);
    let out = if depth_p2 != rep.depth_skeleton { out.tagged(["field-dependent"]) } else { out };
    Ok(vec![out])
}

fn homology(cx: &Complex, ctx: &Ctx) -> Result<Vec<Outcome>> {
    let mut primes = vec![2, ctx.cfg.prime];
    primes.dedup();
    let mut out = Vec::new();
    for p in primes {
        let field = FieldConfig::new(p)?;
        let top = cx.max_face_size();
        let mut boundary_squared_zero = true;
        for s in 1..top {
            let prod = boundary_matrix(cx, s, &field).mul(&boundary_matrix(cx, s + 1, &field))?;
            boundary_squared_zero &= prod.is_zero();
        }
        let betti = reduced_betti(cx, &field);
        let euler_betti = betti.euler();
        let euler_f = cx.f_vector().reduced_euler();
        let ok = boundary_squared_zero && euler_betti == euler_f;
        let d = json!({
            "boundary_squared_zero": boundary_squared_zero,
            "euler_betti": euler_betti,
            "euler_f": euler_f,
            "betti": betti.betti,
        });
        let status = if ok { Status::Pass } else { Status::Violation };
        out.push(Outcome::new(Check::Homology, format!("p={p}"), status, d).tagged(["boundary", "euler"]));
    }
    Ok(out)
}

fn apex_face(cx: &Complex, ctx: &Ctx) -> Result<Vec<Outcome>> {
    let i = ctx.cfg.i;
    let case = format!("i={i}");
    let Some(seq) = find_apex_sequence(cx, i)? else {
        // counted separately: sequences whose last complex is {∅}
        let empty_tail = find_apex_sequence_with(cx, i, true)?.is_some();
        let out = Outcome::new(Check::ApexFace, case, Status::Vacuous, json!({"apex": null, "empty_tail": empty_tail}));
        return Ok(vec![if empty_tail { out.tagged(["empty-tail"]) } else { out }]);
    };
    let rep = check_apex_face(cx, &seq);
    let status = if rep.violation {
        Status::Violation
    } else if rep.hypothesis {
        Status::Pass
    } else {
        Status::Vacuous
    };
    let mut d = detail(&rep);
    d["apex"] = json!(seq.apex_labels());
    Ok(vec![Outcome::new(Check::ApexFace, case, status, d).tagged(["face"])])
}

fn link_commutation(cx: &Complex, ctx: &Ctx) -> Result<Vec<Outcome>> {
    let i = ctx.cfg.i;
    let case = format!("i={i}");
    let Some(seq) = find_apex_sequence(cx, i)? else {
        return Ok(vec![Outcome::new(Check::LinkCommutation, case, Status::Vacuous, json!({"apex": null}))]);
    };
    let rep = check_link_commutation(cx, &seq, &ctx.shift)?;
    let status = if !rep.stable {
        Status::Unstable
    } else if rep.violation() {
        Status::Violation
    } else if rep.hypothesis {
        Status::Pass
    } else {
        Status::Vacuous
    };
    let mut tags = vec!["nevo"];
    if !rep.skeleton_links.is_empty() {
        tags.push("link");
    }
    if !rep.f_vectors.is_empty() {
        tags.push("fvect");
    }
    Ok(vec![Outcome::new(Check::LinkCommutation, case, status, detail(&rep)).tagged(tags)])
}

/// Nonempty subsets of [t, r] that contain r.
fn size_sets(t: usize, r: usize, all: bool) -> Vec<Vec<usize>> {
    if !all {
        return vec![vec![r]];
    }
    let below: Vec<usize> = (t..r).collect();
    (0u32..1 << below.len())
        .map(|mask| {
            let mut s: Vec<usize> = below
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            s.push(r);
            s
        })
        .collect()
}

fn ekr_check(cx: &Complex, ctx: &Ctx) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let mut depth_scm: Option<(i64, bool)> = None;
    for &t in &ctx.cfg.t {
        if cx.faces_slice(t).is_empty() {
            out.push(Outcome::new(Check::Ekr, format!("t={t}"), Status::Vacuous, json!({"t_face": false})));
            continue;
        }
        let near_cone = match find_apex_sequence(cx, t)? {
            Some(seq) => {
                let (depth, scm) = *depth_scm.get_or_insert_with(|| {
                    (
                        homology::depth_by_skeleta(cx, &ctx.field),
                        homology::is_sequentially_cm(cx, &ctx.field).holds,
                    )
                });
                Some(NearConeData {
                    apex: seq.apex_labels(),
                    depth,
                    sequentially_cm: scm,
                })
            }
            None => None,
        };
        for &r in ctx.cfg.r.iter().filter(|&&r| r >= t) {
            let hyp = ekr::hypotheses_from(cx, t, r, near_cone.as_ref());
            for sizes in size_sets(t, r, ctx.cfg.all_size_sets) {
                let case = format!("t={t} S={sizes:?}");
                let rep = ekr::assess(cx, t, &sizes, ctx.cfg.budget, hyp.clone())?;
                let prefix_star: u64 = sizes.iter().map(|&s| ekr::star_count(cx, Face::prefix(t), s)).sum();
                let attained = !(hyp.shifted && rep.brute.exact) || prefix_star as usize == rep.brute.lower;
                let status = if rep.is_violation() || !attained {
                    Status::Violation
                } else {
                    match rep.verdict {
                        Verdict::Holds if hyp.any() => Status::Pass,
                        Verdict::Inconclusive => Status::Inconclusive,
                        _ => Status::Vacuous,
                    }
                };
                let mut d = detail(&rep);
                d["prefix_star"] = json!(prefix_star);
                out.push(Outcome::new(Check::Ekr, case, status, d).tagged(hyp.held()));
            }
        }
    }
    Ok(out)
}

fn prop_easy(cx: &Complex, ctx: &Ctx) -> Result<Vec<Outcome>> {
    let shift = exterior_shift_with(cx, &ctx.shift)?;
    let mut out = Vec::new();
    for &t in &ctx.cfg.t {
        for &r in ctx.cfg.r.iter().filter(|&&r| r >= t) {
            let case = format!("t={t} r={r}");
            if cx.faces_slice(t).is_empty() {
                out.push(Outcome::new(Check::PropEasy, case, Status::Vacuous, json!({"t_face": false})));
                continue;
            }
            let rep = ekr::prop_easy_from(cx, t, r, &shift)?;
            let status = match rep.verdict {
                ekr::DominanceVerdict::Holds => Status::Pass,
                ekr::DominanceVerdict::Fails => Status::Violation,
                ekr::DominanceVerdict::Unstable => Status::Unstable,
            };
            out.push(Outcome::new(Check::PropEasy, case, status, detail(&rep)).tagged(["dominance"]));
        }
    }
    Ok(out)
}

pub fn run_check(check: Check, cx: &Complex, id: usize, cfg: &SweepConfig) -> Vec<Outcome> {
    let ctx = Ctx {
        id,
        cfg,
        field: cfg.field(),
        shift: cfg.shift_options(),
    };
    let res = match check {
        Check::Axioms => axioms(cx, &ctx),
        Check::Depth => depth(cx, &ctx),
        Check::Homology => homology(cx, &ctx),
        Check::ApexFace => apex_face(cx, &ctx),
        Check::LinkCommutation => link_commutation(cx, &ctx),
        Check::Ekr => ekr_check(cx, &ctx),
        Check::PropEasy => prop_easy(cx, &ctx),
    };
    // an error inside a check on a generated instance is an invariant failure
    res.unwrap_or_else(|e| vec![Outcome::new(check, "error", Status::Violation, json!({"error": e.to_string()}))])
}

fn run_instance(id: usize, cx: &Complex, cfg: &SweepConfig) -> InstanceResult {
    InstanceResult {
        id,
        input_digest: input_digest(cx),
        vertices: cx.n(),
        f_vector: cx.f_vector().0,
        results: cfg.checks.iter().flat_map(|&c| run_check(c, cx, id, cfg)).collect(),
    }
}

/// Run the configured checks over an explicit corpus.
pub fn run_on(corpus: &[Complex], cfg: &SweepConfig, command: &str) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let indexed: Vec<(usize, &Complex)> = corpus.iter().enumerate().collect();
    let instances = par::with_workers(cfg.workers, || par::map(&indexed, |&(id, cx)| run_instance(id, cx, cfg)));
    let mut violations = Vec::new();
    let mut summary: BTreeMap<String, Tally> = cfg.checks.iter().map(|c| (c.name().to_string(), Tally::default())).collect();
    for inst in &instances {
        for o in &inst.results {
            summary.entry(o.check.name().to_string()).or_default().add(o);
            if o.status == Status::Violation {
                violations.push(Violation {
                    instance: inst.id,
                    check: o.check,
                    case: o.case.clone(),
                    complex: corpus[inst.id].to_facet_list(),
                    detail: o.detail.clone(),
                });
            }
        }
    }
    Ok(Report {
        version: VERSION.to_string(),
        command: command.to_string(),
        config: cfg.clone(),
        inconclusive: summary.values().map(|t| t.inconclusive).sum(),
        unstable: summary.values().map(|t| t.unstable).sum(),
        instances,
        violations,
        summary,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis(),
        },
    })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Report> {
    let corpus = generate(cfg)?;
    run_on(&corpus, cfg, "sweep")
}
