use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use shiftcx::corpus::NearConeBase;
use shiftcx::ekr::{self, BorgOptions, DEFAULT_BUDGET};
use shiftcx::homology;
use shiftcx::nearcone;
use shiftcx::shifting::DEFAULT_TRIALS;
use shiftcx::sweep::{self, Check, Generator, SweepConfig};
use shiftcx::{Complex, Face, Family, FieldConfig, ShiftOptions, DEFAULT_PRIME};

#[derive(Parser)]
#[command(name = "shiftcx", version, about = "Shifting, depth, near-cones and EKR checks for simplicial complexes")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Prime field characteristic.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Independent random matrices per shift.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Emit the JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Branch-and-bound node limit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for sweeps; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

impl Common {
    fn field(&self) -> Result<FieldConfig> {
        Ok(FieldConfig::new(self.prime)?)
    }

    fn shift(&self) -> Result<ShiftOptions> {
        Ok(ShiftOptions::new(self.field()?, self.seed, self.trials))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Cardinality-indexed f-vector.
    Fvector { file: PathBuf },
    /// Exterior algebraic shift.
    Shift { file: PathBuf },
    /// Reduced Betti numbers.
    Homology { file: PathBuf },
    /// Depth computed three ways.
    Depth { file: PathBuf },
    /// Cohen-Macaulay and sequentially Cohen-Macaulay tests.
    Cm { file: PathBuf },
    /// Near-cone test and apex sequence search.
    Nearcone(NearconeArgs),
    /// Star bound against the exact maximum intersecting family.
    Ekr(EkrArgs),
    /// Inequality (∗) with every sufficient hypothesis evaluated.
    Borg(EkrArgs),
    /// Seeded corpus sweep.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct NearconeArgs {
    file: PathBuf,
    /// Test the near-cone property for this vertex label.
    #[arg(long)]
    vertex: Option<String>,
    /// Apex sequence length; defaults to the largest found.
    #[arg(short, long)]
    i: Option<usize>,
    /// Let the last anti-star have no vertices.
    #[arg(long)]
    allow_empty_tail: bool,
}

#[derive(Args)]
struct EkrArgs {
    file: PathBuf,
    #[arg(short, long)]
    t: usize,
    /// Face sizes, comma separated.
    #[arg(short = 'S', long = "sizes", value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// exhaustive | random | shifted | near-cone
    #[arg(long, default_value = "random")]
    generator: Generator,
    #[arg(short, long, default_value_t = 6)]
    n: usize,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Comma separated: axioms, depth, homology, apex-face, link-commutation, ekr, prop-easy
    #[arg(long, value_delimiter = ',', default_value = "axioms")]
    checks: Vec<Check>,
    #[arg(short, long, value_delimiter = ',', default_value = "1")]
    t: Vec<usize>,
    #[arg(short, long, value_delimiter = ',', default_value = "2")]
    r: Vec<usize>,
    /// Every S ⊆ [t, r] containing r instead of S = {r}.
    #[arg(long)]
    all_size_sets: bool,
    #[arg(short, long, default_value_t = 1)]
    i: usize,
    #[arg(long, default_value_t = 1)]
    min_size: usize,
    /// random | skeleton
    #[arg(long, default_value = "random")]
    base: NearConeBase,
    /// Write the JSON report here as well.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Record {
    command: &'static str,
    digest: Option<String>,
    result: Value,
    violation: bool,
}

fn load(path: &Path) -> Result<Complex> {
    sweep::parse_complex(path).with_context(|| format!("reading {}", path.display()))
}

fn labels(cx: &Complex, f: Face) -> Vec<String> {
    cx.face_labels(f)
}

fn family_labels(cx: &Complex, fam: &Family) -> Vec<Vec<String>> {
    fam.iter().map(|f| labels(cx, f)).collect()
}

fn record(command: &'static str, cx: &Complex, result: Value, violation: bool) -> Record {
    Record {
        command,
        digest: Some(sweep::input_digest(cx)),
        result,
        violation,
    }
}

fn fvector(cx: &Complex) -> Record {
    let f = cx.f_vector();
    let result = json!({"f_vector": f.0, "dim": cx.dim(), "text": f.to_string()});
    record("fvector", cx, result, false)
}

fn shift(cx: &Complex, c: &Common) -> Result<Record> {
    let res = shiftcx::exterior_shift_with(cx, &c.shift()?)?;
    let result = json!({
        "facets": res.shifted.facet_label_sets(),
        "f_vector": res.shifted.f_vector().0,
        "shifted": res.shifted.is_shifted(),
        "prime": res.prime,
        "seeds": res.seeds,
        "trials_agreed": res.trials_agreed,
        "stable": res.stable,
    });
    Ok(record("shift", cx, result, false))
}

fn betti(cx: &Complex, c: &Common) -> Result<Record> {
    let b = homology::reduced_betti(cx, &c.field()?);
    let by_degree: serde_json::Map<String, Value> =
        b.betti.iter().enumerate().map(|(p, &v)| ((p as i64 - 1).to_string(), json!(v))).collect();
    let result = json!({"prime": b.prime, "betti": by_degree, "euler": b.euler()});
    Ok(record("homology", cx, result, false))
}

fn depth(cx: &Complex, c: &Common) -> Result<Record> {
    let rep = homology::depth(cx, &c.shift()?)?;
    let violation = rep.shift_stable && !rep.agree;
    Ok(record("depth", cx, serde_json::to_value(&rep)?, violation))
}

fn cm(cx: &Complex, c: &Common) -> Result<Record> {
    let field = c.field()?;
    let cmv = homology::is_cohen_macaulay(cx, &field);
    let scm = homology::is_sequentially_cm(cx, &field);
    let result = json!({
        "prime": field.p(),
        "cohen_macaulay": cmv.holds,
        "cm_witness": cmv.witness.map(|w| json!({"face": labels(cx, w.face), "degree": w.degree})),
        "sequentially_cm": scm.holds,
        "scm_failure": scm.failure.map(|(r, w)| json!({"skeleton": r, "face": labels(cx, w.face), "degree": w.degree})),
        "pure": cx.is_pure(),
    });
    Ok(record("cm", cx, result, false))
}

fn near_cone(cx: &Complex, a: &NearconeArgs, c: &Common) -> Result<Record> {
    let mut result = json!({});
    let mut violation = false;
    if let Some(label) = &a.vertex {
        let v = cx.index_of(label).with_context(|| format!("unknown vertex {label}"))?;
        let cert = nearcone::is_near_cone(cx, v)?;
        result["near_cone"] = json!({
            "vertex": label,
            "holds": cert.verdict,
            "violating_face": cert.violating_face.map(|(f, w)| json!({"face": labels(cx, f), "vertex": cx.label(w)})),
        });
    }
    let i = match a.i {
        Some(i) => i,
        None => nearcone::largest_apex_length(cx),
    };
    result["largest_found"] = json!(a.i.is_none().then_some(i));
    let seq = if i == 0 {
        None
    } else {
        nearcone::find_apex_sequence_with(cx, i, a.allow_empty_tail)?
    };
    match seq {
        None => result["apex_sequence"] = Value::Null,
        Some(seq) => {
            let chain: Vec<Value> = seq.chain.iter().map(|d| json!(d.facet_label_sets())).collect();
            let face = nearcone::check_apex_face(cx, &seq);
            let link = nearcone::check_link_commutation(cx, &seq, &c.shift()?)?;
            violation = face.violation || link.violation();
            result["apex_sequence"] = json!({"apex": seq.apex_labels(), "chain": chain});
            result["apex_face"] = serde_json::to_value(&face)?;
            result["link_commutation"] = serde_json::to_value(&link)?;
        }
    }
    Ok(record("nearcone", cx, result, violation))
}

fn ekr_cmd(cx: &Complex, a: &EkrArgs, c: &Common) -> Result<Record> {
    let star = ekr::star_bound(cx, a.t, &a.sizes)?;
    let brute = ekr::max_intersecting_family(cx, a.t, &a.sizes, c.budget)?;
    let bound = star.value as usize;
    let inequality = if brute.lower > bound {
        Some(false)
    } else if brute.upper <= bound {
        Some(true)
    } else {
        None
    };
    let mut result = json!({
        "t": a.t,
        "sizes": a.sizes,
        "star_bound": star.value,
        "argmax": labels(cx, star.argmax),
        "brute_max": brute.value(),
        "bracket": [brute.lower, brute.upper],
        "witness": family_labels(cx, &brute.witness),
        "nodes": brute.nodes,
        "inequality": inequality,
    });
    let mut violation = false;
    if let [r] = a.sizes[..] {
        let easy = ekr::check_prop_easy(cx, a.t, r, &c.shift()?)?;
        violation = easy.is_violation();
        result["prop_easy"] = serde_json::to_value(&easy)?;
    }
    Ok(record("ekr", cx, result, violation))
}

fn borg(cx: &Complex, a: &EkrArgs, c: &Common) -> Result<Record> {
    let opts = BorgOptions {
        field: c.field()?,
        budget: c.budget,
    };
    let rep = ekr::verify_borg(cx, a.t, &a.sizes, &opts)?;
    let mut result = serde_json::to_value(&rep)?;
    result["argmax_labels"] = json!(labels(cx, rep.star_bound.argmax));
    result["witness_labels"] = json!(family_labels(cx, &rep.brute.witness));
    result["hypotheses_held"] = json!(rep.hypotheses.held());
    Ok(record("borg", cx, result, rep.is_violation()))
}

fn sweep_cmd(a: &SweepArgs, c: &Common) -> Result<Record> {
    let cfg = SweepConfig {
        generator: a.generator,
        n: a.n,
        n_min: a.n_min,
        samples: a.samples,
        seed: c.seed,
        checks: a.checks.clone(),
        t: a.t.clone(),
        r: a.r.clone(),
        all_size_sets: a.all_size_sets,
        i: a.i,
        min_size: a.min_size,
        base: a.base,
        prime: c.prime,
        trials: c.trials,
        budget: c.budget,
        workers: c.workers,
    };
    let report = sweep::run_sweep(&cfg)?;
    if let Some(out) = &a.out {
        std::fs::write(out, report.to_json()).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(Record {
        command: "sweep",
        digest: None,
        violation: !report.is_clean(),
        result: serde_json::to_value(&report)?,
    })
}

fn render(rec: &Record, as_json: bool) -> String {
    if rec.command == "sweep" {
        return if as_json {
            serde_json::to_string_pretty(&rec.result).expect("json")
        } else {
            sweep_text(&rec.result)
        };
    }
    let full = json!({
        "version": sweep::VERSION,
        "command": rec.command,
        "input_digest": rec.digest,
        "result": rec.result,
        "violation": rec.violation,
    });
    if as_json {
        return serde_json::to_string_pretty(&full).expect("json");
    }
    let mut out = String::new();
    if let Value::Object(m) = &rec.result {
        for (k, v) in m {
            out.push_str(&format!("{k}: {v}\n"));
        }
    }
    if rec.violation {
        out.push_str("VIOLATION\n");
    }
    out
}

fn sweep_text(report: &Value) -> String {
    let mut out = format!(
        "{} instances, {} violations, {} inconclusive, {} unstable, {} ms\n",
        report["instances"].as_array().map_or(0, Vec::len),
        report["violations"].as_array().map_or(0, Vec::len),
        report["inconclusive"],
        report["unstable"],
        report["timing"]["elapsed_ms"],
    );
    if let Value::Object(summary) = &report["summary"] {
        for (check, t) in summary {
            out.push_str(&format!(
                "  {check}: pass {} vacuous {} violation {} inconclusive {} unstable {} covered {}\n",
                t["pass"], t["vacuous"], t["violation"], t["inconclusive"], t["unstable"], t["covered"]
            ));
        }
    }
    if let Some(vs) = report["violations"].as_array() {
        for v in vs {
            out.push_str(&format!("VIOLATION instance {} {} {}\n{}", v["instance"], v["check"], v["case"], v["complex"].as_str().unwrap_or("")));
        }
    }
    out
}

fn run(cli: &Cli) -> Result<Record> {
    let c = &cli.common;
    if c.trials == 0 {
        bail!("--trials must be positive");
    }
    match &cli.cmd {
        Cmd::Fvector { file } => Ok(fvector(&load(file)?)),
        Cmd::Shift { file } => shift(&load(file)?, c),
        Cmd::Homology { file } => betti(&load(file)?, c),
        Cmd::Depth { file } => depth(&load(file)?, c),
        Cmd::Cm { file } => cm(&load(file)?, c),
        Cmd::Nearcone(a) => near_cone(&load(&a.file)?, a, c),
        Cmd::Ekr(a) => ekr_cmd(&load(&a.file)?, a, c),
        Cmd::Borg(a) => borg(&load(&a.file)?, a, c),
        Cmd::Sweep(a) => sweep_cmd(a, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rec) => {
            print!("{}", render(&rec, cli.common.json));
            if rec.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
