use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use fig8_core::covers::{
    commutator_witness, extends_cover, frobenius_count, regular_extends, stallings_excluding_subgroup, strip_cover,
    two_n_cycles, CoverSpec, Decision, ExtendOptions, Partition, Permutation, RegularOptions, DEFAULT_MAX_DEGREE,
};
use fig8_core::genus2::{certify_nontrivial, dehn_oracle, length_bound_check, SurfaceWord, Verdict};
use fig8_core::resfin::{
    average_index_simulation, expected_min_prime_exact, lcs_depth, lps_girth_check, magnus_expand,
    smallest_excluding_prime, unipotent_witness, Depth,
};
use fig8_core::sl2::length_to_trace;
use fig8_core::torus::{
    count_census, enumerate_simple, growth_exponent, mc2_sum, mcshane_sum, one_intersection_census, self_intersection,
    CensusMode, McShaneForm, TraceTriple,
};
use fig8_core::word::{Alphabet, GroupWord, WordSampler};

use crate::output::{input_error, CliError, Report, Status, Table};

type Out = Result<Report, CliError>;

fn parse_triple(s: &str) -> Result<TraceTriple, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(input_error(format!("expected three comma-separated traces, got {s:?}")));
    }
    if let Ok(v) = parts.iter().map(|p| p.parse::<u128>()).collect::<Result<Vec<_>, _>>() {
        return Ok(TraceTriple::from_integers(v[0], v[1], v[2])?);
    }
    let v = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| input_error(format!("bad trace {p:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TraceTriple::from_real(v[0], v[1], v[2])?)
}

fn free2(s: &str) -> Result<GroupWord, CliError> {
    Ok(GroupWord::free2(s)?)
}

fn parse_classes(classes: &[String]) -> Result<Vec<Partition>, CliError> {
    classes.iter().map(|c| c.parse::<Partition>().map_err(CliError::from)).collect()
}

fn decision_status(d: &Decision) -> Status {
    match d.extends() {
        Some(true) => Status::Positive,
        Some(false) => Status::Negative,
        None => Status::Unknown,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusKind {
    Simple,
    Paired,
    Full,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Length cutoff.
    #[arg(long, required_unless_present = "sweep")]
    cutoff: Option<f64>,
    #[arg(long, value_enum, default_value = "paired")]
    mode: CensusKind,
    /// Fricke trace triple `x,y,z` of the torus.
    #[arg(long, default_value = "3,3,3")]
    triple: String,
    /// Count table over lengths `START:END:STEP` instead of a record list.
    #[arg(long, conflicts_with = "cutoff")]
    sweep: Option<String>,
}

pub fn census(a: &CensusArgs) -> Out {
    let root = parse_triple(&a.triple)?;
    if let Some(sweep) = &a.sweep {
        return census_sweep(&root, sweep);
    }
    let cutoff = a.cutoff.expect("required by clap");
    if !(cutoff > 0.0) {
        return Err(input_error("length cutoff must be positive"));
    }
    let records = match a.mode {
        CensusKind::Simple => {
            let t = length_to_trace(cutoff)?;
            if t < 3.0 {
                Vec::new()
            } else {
                enumerate_simple(&root, t)?
            }
        }
        CensusKind::Paired => one_intersection_census(&root, cutoff, CensusMode::Paired)?,
        CensusKind::Full => one_intersection_census(&root, cutoff, CensusMode::Full)?,
    };
    let mut table = Table::new(vec!["trace", "length", "family", "slope"]);
    for r in &records {
        table.push(vec![r.trace.into(), r.length.into(), r.family.as_str().into(), r.slope.to_string().into()]);
    }
    let payload = json!({ "cutoff": cutoff, "mode": format!("{:?}", a.mode).to_lowercase(), "count": records.len(), "records": records });
    Ok(Report::new(Status::Positive, payload)?.with_table(table).prefer_csv())
}

fn census_sweep(root: &TraceTriple, sweep: &str) -> Out {
    let bad = || input_error(format!("sweep must be START:END:STEP, got {sweep:?}"));
    let v: Vec<f64> = sweep.split(':').map(|s| s.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let [start, end, step] = v[..] else { return Err(bad()) };
    if !(start > 0.0 && end >= start && step > 0.0) {
        return Err(bad());
    }
    let steps = ((end - start) / step + 1e-9).floor() as usize;
    if steps > 10_000 {
        return Err(input_error("sweep has more than 10000 points"));
    }
    let lengths: Vec<f64> = (0..=steps).map(|i| start + i as f64 * step).collect();
    let counts = lengths.par_iter().map(|&l| count_census(root, l)).collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(vec!["L", "N0", "N1_paired", "N1_full"]);
    let mut rows = Vec::new();
    for (l, c) in lengths.iter().zip(&counts) {
        table.push(vec![(*l).into(), c.simple.into(), c.paired.into(), c.full.into()]);
        rows.push(json!({ "L": l, "N0": c.simple, "N1_paired": c.paired, "N1_full": c.full }));
    }
    let slope = |f: fn(&fig8_core::torus::CensusCounts) -> usize| {
        let pts: Vec<(f64, f64)> = lengths.iter().zip(&counts).map(|(l, c)| (*l, f(c) as f64)).collect();
        growth_exponent(&pts).ok()
    };
    let payload = json!({
        "sweep": { "start": start, "end": end, "step": step },
        "slope_simple": slope(|c| c.simple),
        "slope_paired": slope(|c| c.paired),
        "slope_full": slope(|c| c.full),
        "counts": rows,
    });
    Ok(Report::new(Status::Positive, payload)?.with_table(table).prefer_csv())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Trace,
    Length,
}

#[derive(Debug, Args)]
pub struct McshaneArgs {
    /// Trace cutoff.
    #[arg(long)]
    cutoff: f64,
    #[arg(long, value_enum, default_value = "trace")]
    form: FormArg,
    #[arg(long, default_value = "3,3,3")]
    triple: String,
}

pub fn mcshane(a: &McshaneArgs) -> Out {
    let root = parse_triple(&a.triple)?;
    let form = match a.form {
        FormArg::Trace => McShaneForm::Trace,
        FormArg::Length => McShaneForm::Length,
    };
    let s = mcshane_sum(&root, a.cutoff, form)?;
    let limit = match a.form {
        FormArg::Trace => 1.0,
        FormArg::Length => 0.5,
    };
    let payload = json!({ "cutoff": a.cutoff, "form": form, "partial_sum": s.partial_sum, "terms": s.terms, "limit": limit });
    Report::new(Status::Positive, payload)
}

#[derive(Debug, Args)]
pub struct CutoffArgs {
    /// Trace cutoff, at least 9.
    #[arg(long)]
    cutoff: f64,
    #[arg(long, default_value = "3,3,3")]
    triple: String,
}

pub fn mc2(a: &CutoffArgs) -> Out {
    let root = parse_triple(&a.triple)?;
    let s = mc2_sum(&root, a.cutoff)?;
    let simple = mcshane_sum(&root, a.cutoff / 3.0, McShaneForm::Trace)?;
    let payload = json!({
        "cutoff": a.cutoff,
        "partial_sum": s.partial_sum,
        "terms": s.terms,
        "mcshane_at_third": simple.partial_sum,
        "ratio": s.partial_sum / simple.partial_sum,
    });
    Report::new(Status::Positive, payload)
}

#[derive(Debug, Args)]
pub struct WordArgs {
    /// Word in `a, b` (uppercase for inverses).
    #[arg(long)]
    word: String,
}

pub fn selfint(a: &WordArgs) -> Out {
    let w = free2(&a.word)?;
    if w.is_empty() {
        return Err(input_error("word is trivial"));
    }
    Report::new(Status::Positive, self_intersection(&w)?)
}

#[derive(Debug, Args)]
pub struct ClassesArgs {
    /// Boundary cycle types, `;`-separated, each a comma-separated partition.
    #[arg(long, value_delimiter = ';', required = true)]
    classes: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[arg(long)]
    genus: usize,
    #[command(flatten)]
    classes: ClassesArgs,
    /// Only accept transitive (connected) covers.
    #[arg(long)]
    transitive: bool,
    /// Search nodes before giving up.
    #[arg(long, default_value_t = ExtendOptions::default().budget)]
    budget: u64,
}

fn decision_payload(spec: &CoverSpec, d: &Decision) -> serde_json::Value {
    let mut v = json!({ "genus": spec.genus, "classes": spec.boundary_classes, "extends": d.extends() });
    let m = v.as_object_mut().expect("object");
    match d {
        Decision::Extends { witness } => {
            m.insert("witness".into(), json!(witness));
        }
        Decision::DoesNotExtend { reason } => {
            m.insert("reason".into(), json!(reason));
        }
        Decision::Unknown { explored } => {
            m.insert("explored".into(), json!(explored));
        }
    }
    v
}

pub fn extend(a: &ExtendArgs) -> Out {
    let spec = CoverSpec::new(a.genus, parse_classes(&a.classes.classes)?)?;
    let d = extends_cover(&spec, ExtendOptions { transitive_only: a.transitive, budget: a.budget })?;
    Report::new(decision_status(&d), decision_payload(&spec, &d))
}

#[derive(Debug, Args)]
pub struct RegularArgs {
    #[arg(long)]
    genus: usize,
    #[command(flatten)]
    classes: ClassesArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    #[arg(long, default_value_t = RegularOptions::default().budget)]
    budget: u64,
}

pub fn regular_extend(a: &RegularArgs) -> Out {
    let spec = CoverSpec::new(a.genus, parse_classes(&a.classes.classes)?)?;
    let d = regular_extends(&spec, RegularOptions { max_degree: a.max_degree, budget: a.budget })?;
    Report::new(decision_status(&d), decision_payload(&spec, &d))
}

pub fn frobenius(a: &ClassesArgs) -> Out {
    let classes = parse_classes(&a.classes)?;
    let n = classes.first().map_or(0, Partition::n);
    if classes.iter().any(|c| c.n() != n) {
        return Err(input_error("classes must partition the same n"));
    }
    let count = frobenius_count(&classes)?;
    Report::new(Status::Positive, json!({ "classes": classes, "count": count.to_string() }))
}

fn parse_perm(s: &str, degree: Option<usize>) -> Result<Permutation, CliError> {
    Ok(match degree {
        Some(n) => Permutation::parse(s, n)?,
        None => Permutation::parse_auto(s)?,
    })
}

#[derive(Debug, Args)]
pub struct TwoCyclesArgs {
    /// Even permutation in cycle notation, e.g. `(1 2)(3 4)`.
    #[arg(long)]
    perm: String,
    /// Degree; defaults to the largest point mentioned.
    #[arg(long)]
    degree: Option<usize>,
}

pub fn twocycles(a: &TwoCyclesArgs) -> Out {
    let s = parse_perm(&a.perm, a.degree)?;
    let (c1, c2) = two_n_cycles(&s)?;
    let (alpha, beta) = commutator_witness(&s)?;
    let payload = json!({ "perm": s, "degree": s.degree(), "c1": c1, "c2": c2, "alpha": alpha, "beta": beta });
    Report::new(Status::Positive, payload)
}

#[derive(Debug, Args)]
pub struct StripArgs {
    /// Horizontal gluing, an n-cycle.
    #[arg(long)]
    sigma: String,
    /// Vertical gluing.
    #[arg(long)]
    tau: String,
    #[arg(long)]
    degree: Option<usize>,
}

pub fn stripcover(a: &StripArgs) -> Out {
    let n = match a.degree {
        Some(n) => n,
        None => parse_perm(&a.sigma, None)?.degree().max(parse_perm(&a.tau, None)?.degree()),
    };
    let c = strip_cover(&parse_perm(&a.sigma, Some(n))?, &parse_perm(&a.tau, Some(n))?)?;
    Report::new(Status::Positive, c)
}

#[derive(Debug, Args)]
pub struct StallingsArgs {
    /// Word over the first `rank` letters.
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 2)]
    rank: usize,
}

pub fn stallings(a: &StallingsArgs) -> Out {
    if !(1..=26).contains(&a.rank) {
        return Err(input_error("rank must be between 1 and 26"));
    }
    let w = GroupWord::parse(&a.word, &Alphabet::standard(a.rank))?;
    let rep = stallings_excluding_subgroup(&w, a.rank)?;
    Report::new(Status::Positive, json!({ "word": a.word, "representation": rep }))
}

#[derive(Debug, Args)]
pub struct PrimeArgs {
    /// Word in `a, b`.
    #[arg(long, required_unless_present = "samples", conflicts_with = "samples")]
    word: Option<String>,
    /// Number of random words for a (length, prime) scatter; needs `--seed`.
    #[arg(long)]
    samples: Option<usize>,
    /// Largest random word length.
    #[arg(long, default_value_t = 300)]
    max_len: usize,
}

pub fn prime(a: &PrimeArgs, seed: Option<u64>) -> Out {
    if let Some(w) = &a.word {
        let pw = smallest_excluding_prime(&free2(w)?)?;
        let payload = json!({ "word": pw.word, "prime": pw.prime, "matrix_mod_p": pw.image, "word_length": pw.word_length });
        return Report::new(Status::Positive, payload);
    }
    let samples = a.samples.expect("required by clap");
    let seed = seed.ok_or_else(|| input_error("--seed is required for random samples"))?;
    if samples == 0 || a.max_len == 0 {
        return Err(input_error("empty series: samples and max-len must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = WordSampler::new(2);
    let mut words = Vec::with_capacity(samples);
    while words.len() < samples {
        let w = sampler.sample_ball(&mut rng, a.max_len);
        if !w.is_empty() {
            words.push(w);
        }
    }
    let primes = words.par_iter().map(smallest_excluding_prime).collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(vec!["length", "prime"]);
    let mut max_ratio = 0.0f64;
    for p in &primes {
        table.push(vec![p.word_length.into(), p.prime.into()]);
        max_ratio = max_ratio.max(p.prime as f64 / p.word_length as f64);
    }
    let points: Vec<[u64; 2]> = primes.iter().map(|p| [p.word_length as u64, p.prime]).collect();
    let payload = json!({ "samples": samples, "max_len": a.max_len, "max_prime_over_length": max_ratio, "points": points });
    Ok(Report::new(Status::Positive, payload)?.with_table(table))
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    #[arg(long)]
    word: String,
    /// Deepest lower central series term examined.
    #[arg(long, default_value_t = 8)]
    max_k: usize,
}

pub fn depth(a: &DepthArgs) -> Out {
    let w = free2(&a.word)?;
    let d = lcs_depth(&w, a.max_k)?;
    let leading = match d {
        Depth::Exact(k) => Some(
            magnus_expand(&w, k)?
                .degree_part(k)
                .into_iter()
                .map(|(mono, c)| (mono, json!(c.to_string())))
                .collect::<serde_json::Map<_, _>>(),
        ),
        Depth::Deeper => None,
    };
    let depth = match d {
        Depth::Exact(k) => json!(k),
        Depth::Deeper => json!("deeper"),
    };
    Report::new(Status::Positive, json!({ "word": a.word, "max_k": a.max_k, "depth": depth, "leading_terms": leading }))
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, required_unless_present = "bracket_max", conflicts_with = "bracket_max")]
    word: Option<String>,
    /// Depth of the word; found from the Magnus expansion when omitted.
    #[arg(long, requires = "word")]
    depth: Option<usize>,
    /// Table of quotient sizes for the left-normed brackets
    /// `[a, b, …, b]` of depth 2 to this value.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
    bracket_max: Option<u8>,
}

fn bracket(k: usize) -> GroupWord {
    let b = GroupWord::generator(2, 2);
    (1..k).fold(GroupWord::generator(2, 1), |c, _| GroupWord::commutator(&c, &b))
}

pub fn witness(a: &WitnessArgs) -> Out {
    if let Some(w) = &a.word {
        let w = free2(w)?;
        let k = match a.depth {
            Some(k) => k,
            None => match lcs_depth(&w, 16)? {
                Depth::Exact(k) => k,
                Depth::Deeper => return Err(input_error("word has depth above 16; pass --depth")),
            },
        };
        return Report::new(Status::Positive, unipotent_witness(&w, k)?);
    }
    let kmax = a.bracket_max.expect("required by clap") as usize;
    let ks: Vec<usize> = (2..=kmax).collect();
    let witnesses = ks.par_iter().map(|&k| unipotent_witness(&bracket(k), k)).collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(vec!["k", "index"]);
    let mut rows = Vec::new();
    for (k, w) in ks.iter().zip(&witnesses) {
        let index = w.image_order.map_or_else(|| w.ambient_order.to_string(), |o| o.to_string());
        table.push(vec![(*k).into(), index.clone().into()]);
        rows.push(json!({
            "k": k,
            "word_length": w.word.len(),
            "modulus": w.modulus,
            "image_order": w.image_order,
            "ambient_order": w.ambient_order.to_string(),
            "index": index,
        }));
    }
    Ok(Report::new(Status::Positive, json!({ "family": "left-normed brackets", "rows": rows }))?.with_table(table))
}

#[derive(Debug, Args)]
pub struct ExpectedArgs {
    /// Number of primes in the partial sum.
    #[arg(long, default_value_t = 9)]
    terms: usize,
}

pub fn expectedprime(a: &ExpectedArgs) -> Out {
    let exact = expected_min_prime_exact(a.terms)?;
    let value = fig8_core::resfin::expected_min_prime(a.terms)?;
    Report::new(Status::Positive, json!({ "terms": a.terms, "exact": exact.to_string(), "value": value }))
}

#[derive(Debug, Args)]
pub struct AvgArgs {
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Largest word length.
    #[arg(long)]
    radius: usize,
    #[arg(long)]
    samples: usize,
}

pub fn avgindex(a: &AvgArgs, seed: Option<u64>) -> Out {
    let seed = seed.ok_or_else(|| input_error("--seed is required"))?;
    Report::new(Status::Positive, average_index_simulation(a.rank, a.radius, a.samples, seed)?)
}

#[derive(Debug, Args)]
pub struct LpsArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
}

pub fn lpsgirth(a: &LpsArgs) -> Out {
    let g = lps_girth_check(a.p, a.q)?;
    Report::new(if g.pass { Status::Positive } else { Status::Negative }, g)
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Word in `a, b, c, d` (uppercase for inverses).
    #[arg(long)]
    word: String,
    /// Also run the Dehn algorithm and the length bound check.
    #[arg(long)]
    check: bool,
}

pub fn surface_certify(a: &SurfaceArgs) -> Out {
    let w = SurfaceWord::parse(&a.word)?;
    let cert = certify_nontrivial(&w)?;
    let status = match cert.verdict {
        Verdict::Nontrivial => Status::Positive,
        Verdict::TrivialConsistent => Status::Negative,
    };
    let mut report = Report::new(status, &cert)?;
    if a.check {
        report.payload.insert("dehn".into(), json!(dehn_oracle(&w)));
        report.payload.insert("length_bound".into(), json!(length_bound_check(&w)?));
    }
    Ok(report)
}
