use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::triple::{Slope, TraceTriple};
use crate::error::{Error, Result};
use crate::sl2::{length_to_trace, trace_to_length};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Simple,
    /// The two figure-eights in the pants obtained by cutting along a simple
    /// geodesic of trace `t`; trace `3t`.
    PairedFig8,
    /// The figure-eight winding once around each copy of the cut curve;
    /// trace `t² + 2`.
    CompanionFig8,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Simple => "simple",
            Family::PairedFig8 => "paired-fig8",
            Family::CompanionFig8 => "companion-fig8",
        }
    }
}

/// One unoriented closed geodesic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicRecord {
    pub trace: f64,
    /// Exact integer trace when the structure is integral.
    pub exact_trace: Option<u128>,
    pub length: f64,
    pub family: Family,
    /// Slope of the simple geodesic itself, or of the parent simple geodesic.
    pub slope: Slope,
    /// Trace of the parent simple geodesic (figure-eights only).
    pub parent_trace: Option<f64>,
    /// 0 or 1 among the two paired figure-eights of one parent; 0 otherwise.
    pub branch: u8,
}

fn record(trace: f64, exact: Option<u128>, family: Family, slope: Slope, parent: Option<f64>, branch: u8) -> GeodesicRecord {
    GeodesicRecord {
        trace,
        exact_trace: exact,
        length: trace_to_length(trace).expect("traces here exceed 2"),
        family,
        slope,
        parent_trace: parent,
        branch,
    }
}

fn sort_records(v: &mut [GeodesicRecord]) {
    v.sort_by(|a, b| {
        a.trace
            .total_cmp(&b.trace)
            .then(a.family.cmp(&b.family))
            .then(a.slope.cmp(&b.slope))
            .then(a.branch.cmp(&b.branch))
    });
}

/// All simple closed geodesics with trace at most `trace_cutoff`, one per
/// slope, sorted by trace then slope.
///
/// Breadth-first over the Vieta tree of the root; a subtree is pruned once
/// its newly created coordinate exceeds the cutoff, since traces only grow
/// away from the reduced root.
pub fn enumerate_simple(root: &TraceTriple, trace_cutoff: f64) -> Result<Vec<GeodesicRecord>> {
    if !(trace_cutoff >= 3.0) {
        return Err(Error::CutoffBelowSystole(trace_cutoff));
    }
    let root = root.reduced();
    let mut seen: HashSet<Slope> = HashSet::new();
    let mut out = Vec::new();
    let mut emit = |t: &TraceTriple, i: usize, out: &mut Vec<GeodesicRecord>| {
        let c = t.coords()[i];
        if c <= trace_cutoff && seen.insert(t.slopes()[i]) {
            out.push(record(c, t.exact().map(|e| e[i]), Family::Simple, t.slopes()[i], None, 0));
        }
    };
    for i in 0..3 {
        emit(&root, i, &mut out);
    }
    let mut queue: VecDeque<(TraceTriple, usize)> = (0..3).map(|i| (root.vieta_flip(i), i)).collect();
    while let Some((t, last)) = queue.pop_front() {
        if t.coords()[last] > trace_cutoff {
            continue;
        }
        emit(&t, last, &mut out);
        for j in (0..3).filter(|&j| j != last) {
            queue.push_back((t.vieta_flip(j), j));
        }
    }
    sort_records(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    /// Only the two trace-`3t` figure-eights per simple geodesic.
    Paired,
    /// Paired figure-eights plus the trace-`t² + 2` companion.
    Full,
}

fn paired_and_companions(root: &TraceTriple, trace_cutoff: f64, mode: CensusMode) -> Result<Vec<GeodesicRecord>> {
    let parent_cutoff = match mode {
        CensusMode::Paired => trace_cutoff / 3.0,
        CensusMode::Full => (trace_cutoff / 3.0).max((trace_cutoff - 2.0).max(0.0).sqrt()),
    };
    if parent_cutoff < 3.0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for s in enumerate_simple(root, parent_cutoff)? {
        let t = s.trace;
        let exact3 = s.exact_trace.and_then(|e| e.checked_mul(3));
        let t3 = exact3.map_or(3.0 * t, |e| e as f64);
        if t3 <= trace_cutoff {
            for branch in 0..2 {
                out.push(record(t3, exact3, Family::PairedFig8, s.slope, Some(t), branch));
            }
        }
        if mode == CensusMode::Full {
            let exact_c = s.exact_trace.and_then(|e| e.checked_mul(e)?.checked_add(2));
            let tc = exact_c.map_or(t * t + 2.0, |e| e as f64);
            if tc <= trace_cutoff {
                out.push(record(tc, exact_c, Family::CompanionFig8, s.slope, Some(t), 0));
            }
        }
    }
    sort_records(&mut out);
    Ok(out)
}

/// Geodesics with one double point and length at most `length_cutoff`.
pub fn one_intersection_census(root: &TraceTriple, length_cutoff: f64, mode: CensusMode) -> Result<Vec<GeodesicRecord>> {
    paired_and_companions(root, length_to_trace(length_cutoff)?, mode)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum McShaneForm {
    /// `Σ 1/(e^l + 1)`, converging to 1/2.
    Length,
    /// `Σ 1 − √(1 − (2/t)²)`, converging to 1.
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialSum {
    pub partial_sum: f64,
    pub terms: usize,
}

/// `1 − √(1 − r²)` in a cancellation-free form.
pub fn one_minus_sqrt(r: f64) -> f64 {
    let u = r * r;
    u / (1.0 + (1.0 - u).sqrt())
}

/// Trace-form McShane term for a simple geodesic of trace `t`.
pub fn mcshane_trace_term(t: f64) -> f64 {
    one_minus_sqrt(2.0 / t)
}

/// Length-form McShane term.
pub fn mcshane_length_term(l: f64) -> f64 {
    1.0 / (l.exp() + 1.0)
}

/// Partial McShane sum over simple geodesics with trace at most the cutoff.
pub fn mcshane_sum(root: &TraceTriple, trace_cutoff: f64, form: McShaneForm) -> Result<PartialSum> {
    let recs = enumerate_simple(root, trace_cutoff)?;
    let mut s = 0.0;
    for r in &recs {
        s += match form {
            McShaneForm::Length => mcshane_length_term(r.length),
            McShaneForm::Trace => mcshane_trace_term(r.trace),
        };
    }
    Ok(PartialSum { partial_sum: s, terms: recs.len() })
}

/// Self-intersection McShane sum `Σ 1 − √(1 − (6/T)²)` over the paired
/// figure-eights with trace `T` at most the cutoff.
///
/// The two terms of one parent are added together before accumulating, so
/// the result is exactly twice the trace-form McShane sum at a third of the
/// cutoff on integral structures.
pub fn mc2_sum(root: &TraceTriple, trace_cutoff: f64) -> Result<PartialSum> {
    if !(trace_cutoff >= 9.0) {
        return Err(Error::CutoffBelowSystole(trace_cutoff));
    }
    let recs = paired_and_companions(root, trace_cutoff, CensusMode::Paired)?;
    let mut s = 0.0;
    for pair in recs.chunks(2) {
        debug_assert!(pair.len() == 2 && pair[0].slope == pair[1].slope);
        let term = one_minus_sqrt(6.0 / pair[0].trace);
        s += term + one_minus_sqrt(6.0 / pair[1].trace);
    }
    Ok(PartialSum { partial_sum: s, terms: recs.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusCounts {
    pub simple: usize,
    pub paired: usize,
    pub full: usize,
}

/// Numbers of simple, paired-figure-eight and all one-double-point
/// geodesics of length at most `length`.
pub fn count_census(root: &TraceTriple, length: f64) -> Result<CensusCounts> {
    if !(length > 0.0) {
        return Err(Error::NonPositiveLength);
    }
    let trace_cutoff = length_to_trace(length)?;
    let simple = if trace_cutoff >= 3.0 { enumerate_simple(root, trace_cutoff)?.len() } else { 0 };
    let full = paired_and_companions(root, trace_cutoff, CensusMode::Full)?;
    let paired = full.iter().filter(|r| r.family == Family::PairedFig8).count();
    Ok(CensusCounts { simple, paired, full: full.len() })
}

/// Least-squares slope of `log N` against `log L`.
pub fn growth_exponent(points: &[(f64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points.iter().filter(|(l, n)| *l > 0.0 && *n >= 10.0).map(|&(l, n)| (l.ln(), n.ln())).collect();
    if usable.len() < 4 {
        return Err(Error::InsufficientData(format!("{} points with N >= 10, need 4", usable.len())));
    }
    let k = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / k;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = usable.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all lengths equal".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modular() -> TraceTriple {
        TraceTriple::modular()
    }

    #[test]
    fn simple_root_level() {
        let recs = enumerate_simple(&modular(), 5.0).unwrap();
        assert_eq!(recs.len(), 3);
        let slopes: Vec<String> = recs.iter().map(|r| r.slope.to_string()).collect();
        assert_eq!(slopes, ["0/1", "1/1", "1/0"]);
        assert!(recs.iter().all(|r| r.exact_trace == Some(3)));
        assert!(matches!(enumerate_simple(&modular(), 2.0), Err(Error::CutoffBelowSystole(_))));
    }

    #[test]
    fn census_examples() {
        let recs = one_intersection_census(&modular(), 4.5, CensusMode::Paired).unwrap();
        assert_eq!(recs.len(), 6);
        assert!(recs.iter().all(|r| r.exact_trace == Some(9)));
        let full = one_intersection_census(&modular(), 6.0, CensusMode::Full).unwrap();
        assert_eq!(full[0].exact_trace, Some(9));
        let companion = full.iter().find(|r| r.family == Family::CompanionFig8).unwrap();
        assert_eq!(companion.exact_trace, Some(11));
        assert_eq!(companion.parent_trace, Some(3.0));
    }

    #[test]
    fn mcshane_examples() {
        let term = mcshane_trace_term(3.0);
        assert!((term - (1.0 - 5f64.sqrt() / 3.0)).abs() < 1e-15);
        assert!((term - 0.254644).abs() < 1e-6);
        let s = mcshane_sum(&modular(), 3.0, McShaneForm::Trace).unwrap();
        assert_eq!(s.terms, 3);
        assert!((s.partial_sum - 0.763932).abs() < 1e-6);
        let s2 = mc2_sum(&modular(), 9.0).unwrap();
        assert_eq!(s2.terms, 6);
        assert!((s2.partial_sum - 1.527864).abs() < 1e-6);
        assert!((one_minus_sqrt(6.0 / 9.0) - term).abs() < 1e-15);
    }

    #[test]
    fn length_and_trace_forms_agree_termwise() {
        for r in enumerate_simple(&modular(), 1e5).unwrap() {
            let a = 2.0 * mcshane_length_term(r.length);
            assert!((a - mcshane_trace_term(r.trace)).abs() < 1e-9);
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_census(&modular(), 1.0).unwrap(), CensusCounts { simple: 0, paired: 0, full: 0 });
        assert_eq!(count_census(&modular(), 2.0).unwrap(), CensusCounts { simple: 3, paired: 0, full: 0 });
        assert_eq!(count_census(&modular(), 4.5).unwrap().paired, 6);
    }

    #[test]
    fn growth_examples() {
        let pts: Vec<(f64, f64)> = (2..8).map(|l| (l as f64 * 3.0, (l * l * 9) as f64)).collect();
        assert!((growth_exponent(&pts).unwrap() - 2.0).abs() < 1e-12);
        let flat: Vec<(f64, f64)> = (1..6).map(|l| (l as f64, 12.0)).collect();
        assert_eq!(growth_exponent(&flat).unwrap(), 0.0);
        assert!(growth_exponent(&pts[..3]).is_err());
    }

    #[test]
    fn general_real_root() {
        // a non-integral cusped triple: fix x = y = 3.5, solve z² − 12.25 z + 24.5 = 0
        let (x, y) = (3.5f64, 3.5f64);
        let b = x * y;
        let z = (b + (b * b - 4.0 * (x * x + y * y)).sqrt()) / 2.0;
        let root = TraceTriple::from_real(x, y, z).unwrap();
        let recs = enumerate_simple(&root, 1e4).unwrap();
        let reduced = root.reduced().coords();
        let min = reduced.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((recs[0].trace - min).abs() < 1e-9);
        let s = mcshane_sum(&root, 1e6, McShaneForm::Trace).unwrap();
        assert!((s.partial_sum - 1.0).abs() < 1e-3, "{}", s.partial_sum);
    }
}
