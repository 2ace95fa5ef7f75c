use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::catalog_entry;
use super::config::{ExperimentConfig, OutputFormat};
use super::report::Report;
use crate::error::{Error, Result};
use crate::haar::stats::{Interval, ALPHA};
use crate::haar::{
    check_section_measure_preserving, cone_measure, fpp_curve_exact, fpp_monte_carlo,
    fpp_wreath_recursion, independence_chi_square, independence_exact, kernel_size_check,
    kernel_size_check_unchecked, sample_uniform, test_vector_hash, FppReport, Precondition,
    SeededRng, BLOCK_SIZE,
};
use crate::tree::{TruncatedAutomorphism, Vertex};
use crate::words::{
    count_full_rank_exhaustive, cousins_along_trajectory, free_action_experiment,
    freeness_experiment, generation_probability_formula, generation_probability_monte_carlo,
    reduce, TupleSample, WordExperimentReport,
};
use crate::zoo::{
    check_branching_witness, check_fractal, check_level_transitive, check_pattern_closure,
    check_super_strongly_fractal, FamilyTag, GroupModel,
};

const DEFAULT_SEED: u64 = 0;
const DEFAULT_CHI2_SAMPLES: u64 = 10_000;
const DEFAULT_MC_SAMPLES: u64 = 100_000;
const LIST_LIMIT: usize = 256;
/// Largest number of shared coordinate tuples for which exact fixed-point
/// proportions are computed alongside a Monte Carlo run.
const EXACT_TUPLE_LIMIT: usize = 1 << 16;
/// Largest `p^{kd}` for which the matrix count is done exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

struct Builder<'a> {
    cfg: &'a ExperimentConfig,
    params: Map<String, Value>,
    streams: Value,
    values: Map<String, Value>,
    intervals: BTreeMap<String, Interval>,
    verdicts: BTreeMap<String, bool>,
    words: Option<Value>,
    fixed_curve: Option<Value>,
    csv: Option<String>,
}

impl<'a> Builder<'a> {
    fn new(cfg: &'a ExperimentConfig) -> Self {
        Builder {
            cfg,
            params: Map::new(),
            streams: Value::Null,
            values: Map::new(),
            intervals: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            words: None,
            fixed_curve: None,
            csv: None,
        }
    }

    fn required<T: Copy + Serialize>(
        &mut self,
        name: &str,
        flag: &str,
        value: Option<T>,
    ) -> Result<T> {
        let v = self.cfg.require(value, flag)?;
        self.params.insert(name.into(), json!(v));
        Ok(v)
    }

    fn defaulted<T: Copy + Serialize>(&mut self, name: &str, value: Option<T>, default: T) -> T {
        let v = value.unwrap_or(default);
        self.params.insert(name.into(), json!(v));
        v
    }

    fn value<T: Serialize>(&mut self, name: &str, v: T) {
        self.values.insert(name.into(), to_value(v));
    }

    /// Copies the fields of a serializable record into `values`.
    fn merge<T: Serialize>(&mut self, record: &T, skip: &[&str]) {
        if let Value::Object(map) = to_value(record) {
            for (k, v) in map {
                if !skip.contains(&k.as_str()) {
                    self.values.insert(k, v);
                }
            }
        }
    }

    fn block_streams(&mut self, seed: u64, samples: u64) {
        self.streams = json!({
            "layout": "blocks",
            "seed": seed,
            "base_stream": 0,
            "block_size": BLOCK_SIZE,
            "count": samples.div_ceil(BLOCK_SIZE as u64),
        });
    }

    fn tuple_streams(&mut self, seed: u64, tuples: u64) {
        self.streams =
            json!({"layout": "per-tuple", "seed": seed, "base_stream": 0, "count": tuples});
    }
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn ratio(x: &BigRational) -> Value {
    json!({"exact": x.to_string(), "decimal": x.to_f64().unwrap_or(f64::NAN)})
}

fn parse_vertices(cfg: &ExperimentConfig, model: &GroupModel) -> Result<Vec<Vertex>> {
    cfg.vertices
        .iter()
        .map(|s| {
            let v: Vertex = s.parse()?;
            v.check_arity(model.arity())?;
            Ok(v)
        })
        .collect()
}

/// Whether exact fixed-point proportions up to level `n` are cheap enough to
/// add to a sampled report.
fn exact_fpp_affordable(model: &GroupModel, n: usize) -> bool {
    match model.coordinates() {
        Some(c) => c
            .shared_dims(n)
            .iter()
            .try_fold(1usize, |acc, &x| acc.checked_mul(x))
            .is_some_and(|t| t <= EXACT_TUPLE_LIMIT),
        None => model
            .order(n)
            .is_ok_and(|o| o <= BigUint::from(model.cap())),
    }
}

/// Runs the configured experiment. Usage and configuration problems are
/// errors; failed verdicts are recorded in the report.
pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    match cfg.threads {
        Some(0) => Err(Error::InvalidParameters(
            "--threads must be positive".into(),
        )),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?
            .install(|| run_inner(cfg)),
        None => run_inner(cfg),
    }
}

fn run_inner(cfg: &ExperimentConfig) -> Result<Report> {
    let start = Instant::now();
    let entry = catalog_entry(&cfg.experiment)
        .ok_or_else(|| Error::UnknownExperiment(cfg.experiment.clone()))?;
    let mode = match (&cfg.mode, entry.modes.first()) {
        (Some(m), _) if entry.modes.contains(&m.as_str()) => Some(m.clone()),
        (Some(m), _) => {
            return Err(Error::InvalidParameters(format!(
                "{} has no mode {m} (modes: {})",
                entry.name,
                entry.modes.join(", ")
            )))
        }
        (None, _) if entry.mode_required => {
            return Err(Error::InvalidParameters(format!(
                "{} needs one of: {}",
                entry.name,
                entry.modes.join(", ")
            )))
        }
        (None, first) => first.map(|s| s.to_string()),
    };
    let randomized = entry.is_randomized(mode.as_deref());
    if cfg.ci && randomized && cfg.seed.is_none() {
        return Err(Error::InvalidParameters(format!(
            "--ci requires an explicit --seed for {}",
            entry.name
        )));
    }
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let mut b = Builder::new(cfg);
    let needs_group = !matches!(entry.name, "formula" | "formula-mc")
        && !(entry.name == "fpp"
            && mode.as_deref() == Some("recursion")
            && cfg.group.is_none()
            && cfg.group_file.is_none());
    let model = if needs_group {
        Some(cfg.model()?)
    } else {
        None
    };

    match (entry.name, model.as_ref()) {
        ("enumerate", Some(g)) => enumerate(&mut b, g)?,
        ("checks", Some(g)) => checks(&mut b, g, mode.as_deref().unwrap_or_default())?,
        ("sample", Some(g)) => sample(&mut b, g, seed)?,
        ("cone", Some(g)) => cone(&mut b, g)?,
        ("section-mp", Some(g)) => section_mp(&mut b, g)?,
        ("kernel", Some(g)) => kernel(&mut b, g)?,
        ("independence", Some(g)) => {
            independence(&mut b, g, mode.as_deref() == Some("chi2"), seed)?
        }
        ("fpp", g) => fpp(&mut b, g, mode.as_deref().unwrap_or("exact"), seed)?,
        ("freeness", Some(g)) => words(&mut b, g, false, seed)?,
        ("free-action", Some(g)) => words(&mut b, g, true, seed)?,
        ("cousins", Some(g)) => cousins(&mut b, g, seed)?,
        ("formula", None) => formula(&mut b)?,
        ("formula-mc", None) => formula_mc(&mut b, seed)?,
        (name, _) => return Err(Error::UnknownExperiment(name.to_string())),
    }
    if cfg.format == OutputFormat::Csv && b.csv.is_none() {
        return Err(Error::InvalidParameters(format!(
            "{} has no CSV form",
            entry.name
        )));
    }
    if !randomized {
        b.streams = json!({"layout": "none"});
    }
    Ok(Report {
        experiment: entry.name.to_string(),
        mode,
        group: model.as_ref().map(|g| g.id().to_string()),
        params: b.params,
        seed,
        seed_defaulted: cfg.seed.is_none(),
        streams: b.streams,
        values: b.values,
        intervals: b.intervals,
        verdicts: b.verdicts,
        words: b.words,
        fixed_curve: b.fixed_curve,
        config: cfg.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        rng_test_vector_hash: test_vector_hash(),
        runtime_ms: start.elapsed().as_millis() as u64,
        csv: b.csv,
    })
}

fn enumerate(b: &mut Builder, g: &GroupModel) -> Result<()> {
    let n = b.required("n", "--depth", b.cfg.n)?;
    b.value("order", g.order(n)?.to_string());
    let q = g.enumerate(n)?;
    if q.len() <= LIST_LIMIT {
        b.value(
            "elements",
            q.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        );
    }
    b.verdicts.insert(
        "contains_identity".into(),
        q.contains(&TruncatedAutomorphism::identity(g.arity(), n)),
    );
    Ok(())
}

fn checks(b: &mut Builder, g: &GroupModel, kind: &str) -> Result<()> {
    let n = b.required("n", "--depth", b.cfg.n)?;
    let holds = match kind {
        "transitive" => check_level_transitive(g, n)?,
        "fractal" => check_fractal(g, n)?,
        "ssf" => {
            let m = b.required("m", "--section-depth", b.cfg.m)?;
            check_super_strongly_fractal(g, n, m)?
        }
        "pattern" | "branching" => {
            let depth = b.cfg.pattern_depth.or(g.declared_depth());
            let depth = b.required("D", "--pattern-depth", depth)?;
            if kind == "pattern" {
                check_pattern_closure(g, depth, n)?
            } else {
                check_branching_witness(g, depth, n)?
            }
        }
        other => return Err(Error::InvalidParameters(format!("unknown check {other}"))),
    };
    b.verdicts.insert(kind.to_string(), holds);
    Ok(())
}

fn sample(b: &mut Builder, g: &GroupModel, seed: u64) -> Result<()> {
    let n = b.required("n", "--depth", b.cfg.n)?;
    let mut rng = SeededRng::new(seed, 0);
    let x = sample_uniform(g, n, &mut rng)?;
    b.streams = json!({"layout": "single", "seed": seed, "stream": 0});
    b.value("element", x.to_string());
    b.verdicts.insert("member".into(), g.contains(&x)?);
    Ok(())
}

fn cone(b: &mut Builder, g: &GroupModel) -> Result<()> {
    let elements = b
        .cfg
        .elements
        .iter()
        .map(|s| s.parse::<TruncatedAutomorphism>())
        .collect::<Result<Vec<_>>>()?;
    let first_depth = elements.first().map(|x| x.depth());
    let n = b.required("n", "--depth or --element", b.cfg.n.or(first_depth))?;
    let measure = cone_measure(g, n, &elements)?;
    b.value("measure", ratio(&measure));
    Ok(())
}

fn section_mp(b: &mut Builder, g: &GroupModel) -> Result<()> {
    let n = b.required("n", "--depth", b.cfg.n)?;
    let m = b.required("m", "--section-depth", b.cfg.m)?;
    let mut vs = parse_vertices(b.cfg, g)?;
    if vs.is_empty() {
        let count = g.arity().pow(n as u32);
        vs = (0..count)
            .map(|i| Vertex::from_level_index(g.arity(), n, i))
            .collect();
    }
    let mut per_vertex = Map::new();
    let mut all = true;
    for v in &vs {
        let ok = check_section_measure_preserving(g, n, m, v)?;
        all &= ok;
        per_vertex.insert(v.to_string(), json!(ok));
    }
    b.value("vertices", per_vertex);
    b.verdicts.insert("measure_preserving".into(), all);
    Ok(())
}

fn kernel(b: &mut Builder, g: &GroupModel) -> Result<()> {
    let n = b.required("n", "--depth", b.cfg.n)?;
    let m = b.required("m", "--section-depth", b.cfg.m)?;
    let vs = parse_vertices(b.cfg, g)?;
    b.params.insert("vertices".into(), json!(b.cfg.vertices));
    let rep = if b.cfg.unchecked {
        kernel_size_check_unchecked(g, n, m, &vs)?
    } else {
        kernel_size_check(g, n, m, &vs)?
    };
    b.value("observed", rep.observed.to_string());
    b.value("predicted", ratio(&rep.predicted));
    b.value("precondition", &rep.precondition);
    b.value(
        "precondition_holds",
        rep.precondition == Precondition::Satisfied,
    );
    b.verdicts.insert("kernel_matches".into(), rep.matches);
    Ok(())
}

fn independence(b: &mut Builder, g: &GroupModel, chi2: bool, seed: u64) -> Result<()> {
    let n = b.required("n", "--depth", b.cfg.n)?;
    let m = b.required("m", "--section-depth", b.cfg.m)?;
    let vs = parse_vertices(b.cfg, g)?;
    if vs.is_empty() {
        return Err(Error::InvalidParameters(
            "independence needs at least one --vertex".into(),
        ));
    }
    b.params.insert("vertices".into(), json!(b.cfg.vertices));
    let rep = if chi2 {
        let samples = b.defaulted("samples", b.cfg.samples, DEFAULT_CHI2_SAMPLES);
        let alpha = b.defaulted("alpha", b.cfg.alpha, ALPHA);
        b.block_streams(seed, samples);
        independence_chi_square(g, n, m, &vs, samples, alpha, &SeededRng::new(seed, 0))?
    } else {
        independence_exact(g, n, m, &vs)?
    };
    b.merge(
        &rep,
        &[
            "group",
            "n",
            "m",
            "vertices",
            "samples",
            "alpha",
            "seed",
            "stream",
            "independent",
        ],
    );
    b.verdicts.insert("independent".into(), rep.independent);
    Ok(())
}

fn is_non_increasing(xs: &[BigRational]) -> bool {
    xs.windows(2).all(|w| w[1] <= w[0])
}

fn fpp(b: &mut Builder, g: Option<&GroupModel>, mode: &str, seed: u64) -> Result<()> {
    if mode == "recursion" {
        return fpp_recursion(b, g);
    }
    let g = g.expect("group resolved for fpp");
    let n = b.required("n", "--depth", b.cfg.n)?;
    let report = match mode {
        "exact" => {
            let rep = FppReport::exact(g, n)?;
            let curve = fpp_curve_exact(g, n)?;
            if let Some(last) = curve.last() {
                b.value("fpp", last.to_string());
                b.value("decimal", last.to_f64().unwrap_or(f64::NAN));
            }
            b.verdicts
                .insert("non_increasing".into(), is_non_increasing(&curve));
            rep
        }
        "mc" | "curve" => {
            let samples = b.defaulted("samples", b.cfg.samples, DEFAULT_MC_SAMPLES);
            b.block_streams(seed, samples);
            let mut rep = fpp_monte_carlo(g, n, samples, &SeededRng::new(seed, 0))?;
            if exact_fpp_affordable(g, n) {
                let curve = fpp_curve_exact(g, n)?;
                let covered = rep
                    .levels
                    .iter()
                    .zip(&curve)
                    .filter(|(l, _)| mode == "curve" || l.level == n)
                    .all(|(l, f)| {
                        l.interval
                            .is_some_and(|i| i.contains(f.to_f64().unwrap_or(f64::NAN)))
                    });
                b.verdicts.insert("covers_exact".into(), covered);
                if mode == "curve" {
                    b.verdicts
                        .insert("non_increasing".into(), is_non_increasing(&curve));
                }
                rep = rep.with_exact(&curve);
            }
            for l in &rep.levels {
                if let Some(i) = l.interval {
                    if mode == "curve" || l.level == n {
                        b.intervals.insert(format!("level_{}", l.level), i);
                    }
                }
            }
            if let Some(l) = rep.level(n) {
                b.value("estimate", l.estimate);
            }
            rep
        }
        other => {
            return Err(Error::InvalidParameters(format!(
                "unknown fpp mode {other}"
            )))
        }
    };
    b.csv = Some(report.to_csv());
    b.value("levels", &report.levels);
    Ok(())
}

fn fpp_recursion(b: &mut Builder, g: Option<&GroupModel>) -> Result<()> {
    let n = b.required("n", "--depth", b.cfg.n)?;
    let inferred = g.and_then(|g| match g.family() {
        FamilyTag::CyclicWreath => Some(g.arity()),
        FamilyTag::FullWreath if g.arity() == 2 => Some(2),
        _ => None,
    });
    let p = b.required("p", "--p", b.cfg.p.or(inferred))?;
    let curve = (1..=n)
        .map(|l| fpp_wreath_recursion(p, l))
        .collect::<Result<Vec<_>>>()?;
    if let Some(last) = curve.last() {
        b.value("fpp", last.to_string());
        b.value("decimal", last.to_f64().unwrap_or(f64::NAN));
    }
    b.verdicts
        .insert("non_increasing".into(), is_non_increasing(&curve));
    if let Some(g) = g {
        if exact_fpp_affordable(g, n) {
            b.verdicts
                .insert("matches_exact".into(), fpp_curve_exact(g, n)? == curve);
        }
    }
    let mut csv = String::from("level,exact,estimate,ci_lo,ci_hi\n");
    for (i, f) in curve.iter().enumerate() {
        csv.push_str(&format!("{},{},,,\n", i + 1, f));
    }
    b.csv = Some(csv);
    Ok(())
}

fn words(b: &mut Builder, g: &GroupModel, free_action: bool, seed: u64) -> Result<()> {
    type Experiment =
        fn(&GroupModel, usize, usize, usize, u64, &SeededRng) -> Result<WordExperimentReport>;
    let (default_l, experiment): (usize, Experiment) = if free_action {
        (4, free_action_experiment)
    } else {
        (6, freeness_experiment)
    };
    let k = b.defaulted("k", b.cfg.k, 2);
    let max_len = b.defaulted("L", b.cfg.max_len, default_l);
    let n = b.defaulted("n", b.cfg.n, 12);
    let samples = b.defaulted("samples", b.cfg.samples, 100);
    b.tuple_streams(seed, samples);
    let mut rep = experiment(g, k, max_len, n, samples, &SeededRng::new(seed, 0))?;
    b.value("finding", &rep.finding);
    b.value("word_count", rep.word_count);
    b.value("tuples_with_trivial_word", rep.tuples_with_trivial_word);
    b.value("failure_rate", rep.failure_rate());
    b.value("fixed_at_depth", &rep.fixed_at_depth);
    b.value("single_letter", &rep.single_letter);
    b.intervals
        .insert("fixed_at_depth".into(), rep.fixed_at_depth.interval);
    b.intervals
        .insert("single_letter".into(), rep.single_letter.interval);
    if let Some(levels) = &rep.empirical_levels {
        b.value("empirical_levels", levels);
    }
    if let Some(max) = b.cfg.max_failures {
        b.params.insert("max_failures".into(), json!(max));
        b.verdicts.insert(
            "failures_within_bound".into(),
            rep.tuples_with_trivial_word <= max,
        );
    }
    if free_action && exact_fpp_affordable(g, n) {
        let f = crate::haar::fpp_exact(g, n)?;
        b.value("single_letter_exact", ratio(&f));
        let covered = rep
            .single_letter
            .interval
            .contains(f.to_f64().unwrap_or(f64::NAN));
        b.verdicts
            .insert("single_letter_covers_exact".into(), covered);
    }
    if free_action {
        let curves: Vec<Value> = rep
            .words
            .iter_mut()
            .map(|w| json!({"index": w.index, "word": w.word, "curve": w.fixed_curve.take()}))
            .collect();
        b.fixed_curve = Some(Value::Array(curves));
    }
    b.words = Some(to_value(&rep.words));
    Ok(())
}

/// Signed letters separated by spaces or commas (`"1 2 -1"`), or the display
/// form `"x1 x2^-1"`.
fn parse_word(text: &str) -> Result<Vec<i32>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || Error::Parse(format!("bad letter {t:?}"));
            if let Some(rest) = t.strip_prefix('x') {
                let (idx, sign) = match rest.strip_suffix("^-1") {
                    Some(i) => (i, -1),
                    None => (rest, 1),
                };
                idx.parse::<i32>().map(|i| sign * i).map_err(|_| bad())
            } else {
                t.parse::<i32>().map_err(|_| bad())
            }
        })
        .collect()
}

fn cousins(b: &mut Builder, g: &GroupModel, seed: u64) -> Result<()> {
    let text = b
        .cfg
        .word
        .clone()
        .ok_or_else(|| Error::InvalidParameters("cousins needs --word".into()))?;
    let letters = parse_word(&text)?;
    let widest = letters
        .iter()
        .map(|x| x.unsigned_abs() as usize)
        .max()
        .unwrap_or(1);
    let k = b.defaulted("k", b.cfg.k, widest);
    let word = reduce(&letters, k)?;
    b.params.insert("word".into(), json!(word.to_string()));
    let vs = parse_vertices(b.cfg, g)?;
    let [v] = vs.as_slice() else {
        return Err(Error::InvalidParameters(
            "cousins needs exactly one --vertex".into(),
        ));
    };
    b.params.insert("vertex".into(), json!(v.to_string()));
    let depth = b.required(
        "D",
        "--pattern-depth",
        b.cfg.pattern_depth.or(g.declared_depth()),
    )?;
    let samples = b.defaulted("samples", b.cfg.samples, 1);
    b.tuple_streams(seed, samples);
    let base = SeededRng::new(seed, 0);
    let mut applicable = 0u64;
    let mut holds = true;
    let mut reports = Vec::new();
    for t in 0..samples {
        let tuple = TupleSample::sample(g, k, v.level(), &mut base.substream(t))?;
        let rep = cousins_along_trajectory(&word, &tuple, v, depth)?;
        if rep.applicable {
            applicable += 1;
            holds &= rep.pairwise_non_cousins;
        }
        reports.push(rep);
    }
    b.value("applicable", applicable);
    b.value("tuples", reports);
    b.verdicts
        .insert("non_cousins_when_applicable".into(), holds);
    Ok(())
}

fn formula_params(b: &mut Builder) -> Result<(usize, usize, usize)> {
    let p = b.required("p", "--p", b.cfg.p)?;
    let d = b.required("d", "--d", b.cfg.d)?;
    let k = b.required("k", "--rank", b.cfg.k)?;
    Ok((p, d, k))
}

fn formula(b: &mut Builder) -> Result<()> {
    let (p, d, k) = formula_params(b)?;
    let f = generation_probability_formula(p, d, k)?;
    b.value("probability", f.value.to_string());
    b.value("decimal", f.value.to_f64().unwrap_or(f64::NAN));
    b.value("k_below_d", f.k_below_d);
    let cells = (p as u64).checked_pow((k * d) as u32);
    if cells.is_some_and(|c| c <= EXHAUSTIVE_LIMIT) {
        let full = count_full_rank_exhaustive(p, d, k)?;
        let total = BigUint::from(cells.unwrap_or_default());
        let exhaustive = BigRational::new(full.clone().into(), total.into());
        b.value(
            "exhaustive",
            json!({"full_rank": full.to_string(), "proportion": exhaustive.to_string()}),
        );
        b.verdicts
            .insert("matches_exhaustive".into(), exhaustive == f.value);
    }
    Ok(())
}

fn formula_mc(b: &mut Builder, seed: u64) -> Result<()> {
    let (p, d, k) = formula_params(b)?;
    let samples = b.defaulted("samples", b.cfg.samples, DEFAULT_MC_SAMPLES);
    if b.cfg.transposed {
        b.params.insert("transposed".into(), json!(true));
    }
    b.block_streams(seed, samples);
    let est = generation_probability_monte_carlo(
        p,
        d,
        k,
        samples,
        &SeededRng::new(seed, 0),
        b.cfg.transposed,
    )?;
    let f = generation_probability_formula(p, d, k)?;
    b.value("formula", ratio(&f.value));
    b.value("successes", est.proportion.successes);
    b.value("estimate", est.proportion.estimate);
    b.intervals
        .insert("estimate".into(), est.proportion.interval);
    b.verdicts.insert(
        "covers_formula".into(),
        est.proportion
            .interval
            .contains(f.value.to_f64().unwrap_or(f64::NAN)),
    );
    Ok(())
}
