use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use coleman::engine::Engine;
use ecmodel::{CurveModel, PadicCurve, PadicPoint, ReductionType};
use padic::Padic;
use rayon::prelude::*;
use selmer::{level1_set, level2_set_rank0, level2_set_rank1, w_norms, w_sets, MatchPolicy};
use serde::{Deserialize, Serialize};

use crate::record::CurveRecord;
use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u64,
    pub level: u8,
    pub prec: i64,
    pub match_digits: i64,
    /// Timings make reports differ between runs, so batch files leave them out.
    pub timings: bool,
}

impl RunConfig {
    pub fn new(p: u64, level: u8) -> Self {
        RunConfig { p, level, prec: 20, match_digits: 5, timings: false }
    }

    fn policy(&self) -> MatchPolicy {
        MatchPolicy { match_digits: self.match_digits, ..MatchPolicy::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointText {
    pub x: Padic,
    pub y: Padic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiReport {
    pub norm: String,
    pub points: Vec<PointText>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Assumptions {
    pub rank: u32,
    pub sha_finite: bool,
    /// Additive primes without an override, each contributing `{0}`.
    pub additive_primes: Vec<u64>,
    pub w_override: BTreeMap<u64, Vec<String>>,
    pub generator: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub label: String,
    pub p: u64,
    pub level: u8,
    pub precision: i64,
    pub verdict: Verdict,
    /// `equality` for level 2, `containment` for level 1.
    pub rule: String,
    pub w_norms: Option<usize>,
    pub level1_count: Option<usize>,
    pub nonempty_psi: Vec<PsiReport>,
    pub weakly_global: Vec<PointText>,
    pub known_points: Vec<[String; 2]>,
    pub missing_known: Vec<[String; 2]>,
    pub extra_points: Vec<PointText>,
    pub rank1_c: Option<Padic>,
    pub assumptions: Assumptions,
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl RunReport {
    fn blank(rec: &CurveRecord, cfg: &RunConfig) -> Self {
        RunReport {
            label: rec.label.clone(),
            p: cfg.p,
            level: cfg.level,
            precision: cfg.prec,
            verdict: Verdict::Error,
            rule: if cfg.level == 1 { "containment" } else { "equality" }.into(),
            w_norms: None,
            level1_count: None,
            nonempty_psi: Vec::new(),
            weakly_global: Vec::new(),
            known_points: rec.integral_points.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect(),
            missing_known: Vec::new(),
            extra_points: Vec::new(),
            rank1_c: None,
            assumptions: Assumptions {
                rank: rec.rank,
                sha_finite: rec.sha_finite,
                additive_primes: Vec::new(),
                w_override: rec.w_override.clone(),
                generator: rec.generator.as_ref().map(|(x, y)| [x.to_string(), y.to_string()]),
            },
            message: None,
            timings_ms: None,
        }
    }
}

fn text(pt: &PadicPoint) -> Option<PointText> {
    match pt {
        PadicPoint::Affine { x, y } => Some(PointText { x: x.clone(), y: y.clone() }),
        PadicPoint::Infinity => None,
    }
}

struct Computed {
    points: Vec<PadicPoint>,
    psi: Vec<PsiReport>,
    w_norms: Option<usize>,
    level1_count: Option<usize>,
    rank1_c: Option<Padic>,
    rerun: bool,
}

fn compute(rec: &CurveRecord, curve: &CurveModel, cfg: &RunConfig, prec: i64, clock: &mut Clock) -> Result<Computed, HarnessError> {
    let engine = Engine::new(curve, cfg.p, prec)?;
    clock.lap("engine");
    if cfg.level == 1 {
        let points = level1_set(&engine)?;
        clock.lap("level1");
        let n = points.len();
        return Ok(Computed { points, psi: Vec::new(), w_norms: None, level1_count: Some(n), rank1_c: None, rerun: false });
    }
    let norms = w_norms(&w_sets(curve, cfg.p, prec, &rec.overrides()?)?);
    let psi_report = |psi: &[selmer::PsiSet]| -> Vec<PsiReport> {
        psi.iter()
            .filter(|s| !s.points.is_empty())
            .map(|s| PsiReport { norm: s.norm.key(), points: s.points.iter().filter_map(text).collect() })
            .collect()
    };
    match rec.rank {
        0 => {
            let res = level2_set_rank0(&engine, &norms, cfg.policy())?;
            clock.lap("level2");
            Ok(Computed {
                points: res.union(),
                psi: psi_report(&res.psi),
                w_norms: Some(norms.len()),
                level1_count: Some(res.points.len()),
                rank1_c: None,
                rerun: res.needs_more_precision,
            })
        }
        1 => {
            let (gx, gy) = rec
                .generator
                .as_ref()
                .ok_or_else(|| HarnessError::Usage(format!("{}: rank 1 needs a generator", rec.label)))?;
            let gen = PadicCurve::new(curve, cfg.p, prec + 4).from_integers(gx, gy);
            let res = level2_set_rank1(&engine, &gen, &norms)?;
            clock.lap("level2");
            Ok(Computed {
                points: res.union(),
                psi: psi_report(&res.psi),
                w_norms: Some(norms.len()),
                level1_count: None,
                rank1_c: Some(res.c),
                rerun: false,
            })
        }
        r => Err(HarnessError::Usage(format!("{}: rank {r} is not supported", rec.label))),
    }
}

struct Clock {
    start: Instant,
    laps: BTreeMap<String, u64>,
}

impl Clock {
    fn new() -> Self {
        Clock { start: Instant::now(), laps: BTreeMap::new() }
    }

    fn lap(&mut self, name: &str) {
        *self.laps.entry(name.into()).or_default() += self.start.elapsed().as_millis() as u64;
        self.start = Instant::now();
    }
}

fn matches(pt: &PadicPoint, x: &num_bigint::BigInt, y: &num_bigint::BigInt, digits: i64) -> bool {
    let PadicPoint::Affine { x: px, .. } = pt else {
        return false;
    };
    let p = px.p();
    let digits = digits.min(pt.precision());
    pt.agrees_to(&PadicPoint::affine(Padic::from_bigint(p, x, digits), Padic::from_bigint(p, y, digits)), digits)
}

/// Runs one record. Computational failures become an `ERROR` verdict.
pub fn run_record(rec: &CurveRecord, cfg: &RunConfig) -> RunReport {
    let mut report = RunReport::blank(rec, cfg);
    let curve = match rec.curve() {
        Ok(c) => c,
        Err(e) => {
            report.message = Some(e.to_string());
            return report;
        }
    };
    if !curve.has_good_reduction(cfg.p) || rec.w_override.contains_key(&cfg.p) {
        report.verdict = Verdict::Skip;
        report.message = Some(format!("bad reduction at {}", cfg.p));
        return report;
    }
    if !matches!(cfg.level, 1 | 2) {
        report.message = Some(format!("level {} is not supported", cfg.level));
        return report;
    }
    if let Ok(bad) = curve.bad_primes() {
        report.assumptions.additive_primes = bad
            .into_iter()
            .filter(|l| curve.classify_reduction(*l).kind == ReductionType::Additive && !rec.w_override.contains_key(l))
            .collect();
    }
    let mut clock = Clock::new();
    let mut prec = cfg.prec;
    let mut out = compute(rec, &curve, cfg, prec, &mut clock);
    if matches!(&out, Ok(c) if c.rerun) {
        prec *= 2;
        out = compute(rec, &curve, cfg, prec, &mut clock);
    }
    report.precision = prec;
    if cfg.timings {
        report.timings_ms = Some(clock.laps);
    }
    let c = match out {
        Ok(c) => c,
        Err(e) => {
            report.message = Some(e.to_string());
            return report;
        }
    };
    let digits = cfg.match_digits;
    report.missing_known = rec
        .integral_points
        .iter()
        .filter(|(x, y)| !c.points.iter().any(|pt| matches(pt, x, y, digits)))
        .map(|(x, y)| [x.to_string(), y.to_string()])
        .collect();
    report.extra_points = c
        .points
        .iter()
        .filter(|pt| !rec.integral_points.iter().any(|(x, y)| matches(pt, x, y, digits)))
        .filter_map(text)
        .collect();
    report.weakly_global = c.points.iter().filter_map(text).collect();
    report.nonempty_psi = c.psi;
    report.w_norms = c.w_norms;
    report.level1_count = c.level1_count;
    report.rank1_c = c.rank1_c;
    let ok = report.missing_known.is_empty() && (cfg.level == 1 || report.extra_points.is_empty());
    report.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    if c.rerun {
        report.message = Some("a D2 value stayed in the gap zone after a rerun at doubled precision".into());
    }
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(reports: &[RunReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skip => s.skip += 1,
                Verdict::Error => s.error += 1,
            }
        }
        s
    }
}

/// Runs every record in parallel; reports come back ordered by label.
pub fn run_batch(records: &[CurveRecord], cfg: &RunConfig) -> Vec<RunReport> {
    let mut reports: Vec<(usize, RunReport)> =
        records.par_iter().enumerate().map(|(i, r)| (i, run_record(r, cfg))).collect();
    reports.sort_by(|a, b| a.1.label.cmp(&b.1.label).then(a.0.cmp(&b.0)));
    reports.into_iter().map(|(_, r)| r).collect()
}

pub fn write_reports(path: &Path, reports: &[RunReport]) -> Result<(), HarnessError> {
    let io = |e: std::io::Error| HarnessError::Io(format!("{}: {e}", path.display()));
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for r in reports {
        let line = serde_json::to_string(r).map_err(|e| HarnessError::Io(e.to_string()))?;
        writeln!(f, "{line}").map_err(io)?;
    }
    f.flush().map_err(io)
}
