//! One PASS/FAIL line per acceptance criterion, with the tolerances pinned below.
//! Criteria whose literal wording cannot hold are still evaluated literally and
//! listed in `KNOWN_DEVIATIONS`; any other failure makes the target fail.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use coleman::engine::Engine;
use ecmodel::{count_points_fp, elliptic_log, CurveModel, FpCurve, FpPoint, PadicCurve, PadicPoint};
use frobenius::{frobenius_matrix, short_model};
use harness::{ingest, run_batch, run_record, CurveRecord, RunConfig, Verdict};
use num_bigint::BigInt;
use padic::{padic_exp, padic_log, teichmuller_of_residue, Padic};
use polylog::{dilog_scan, p1_s2_weakly_global, p1_weakly_global, randomness_product, s2_value, ScanConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selmer::{level2_set_rank0, w_norms, w_set, w_sets, MatchPolicy};

const SCAN_DESK_BOUND: u64 = 10_000;
const SCAN_DESK_SECONDS: f64 = 120.0;
const SCAN_FULL_BOUND: u64 = 100_000;
const PRODUCT_TOL: f64 = 0.0005;
const P1_PREC: i64 = 20;
const P1_MIN_DIGITS: i64 = 15;
const S2_MATCH_DIGITS: i64 = 5;
const S2_VALUE_DIGITS: i64 = 15;
const FROB_PREC: i64 = 20;
const FROB_DIGITS: i64 = 10;
const FROB_SECONDS: f64 = 5.0;
const DOUBLING_PREC: i64 = 12;
const DOUBLING_DIGITS: i64 = 8;
const DOUBLING_POINTS: usize = 20;
const EC_PREC: i64 = 20;
const EC_PREC_97: i64 = 8;
const MATCH_DIGITS: i64 = 5;

/// Criteria whose literal statement is known not to hold; see the README.
const KNOWN_DEVIATIONS: &[&str] = &["C5", "C8"];

struct Line {
    id: &'static str,
    ok: bool,
}

struct Sheet {
    lines: Vec<Line>,
}

impl Sheet {
    fn record(&mut self, id: &'static str, what: &str, ok: bool, details: &[String]) {
        println!("{} {id} {what}", if ok { "PASS" } else { "FAIL" });
        for d in details {
            println!("      {d}");
        }
        self.lines.push(Line { id, ok });
    }
}

fn fixtures() -> Vec<CurveRecord> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut recs = ingest(&dir.join("curves.jsonl")).unwrap().records;
    recs.extend(ingest(&dir.join("rank1.jsonl")).unwrap().records);
    recs
}

fn rational(p: u64, n: i64, d: i64, prec: i64) -> Padic {
    Padic::from_ratio(p, &BigInt::from(n), &BigInt::from(d), prec)
}

fn c1(sheet: &mut Sheet) {
    let t = Instant::now();
    let desk = dilog_scan(&ScanConfig { bound: SCAN_DESK_BOUND, ..Default::default() }).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let full = dilog_scan(&ScanConfig { bound: SCAN_FULL_BOUND, ..Default::default() }).unwrap();
    let ok = desk.vanishing.is_empty() && secs < SCAN_DESK_SECONDS && full.vanishing.is_empty();
    sheet.record(
        "C1",
        "g2(zeta6) mod p != 0 for p = 1 mod 3 below 10^4 (and 10^5)",
        ok,
        &[
            format!("10^4: {} primes, {} vanishing, {secs:.2} s (limit {SCAN_DESK_SECONDS} s)", desk.primes_checked, desk.vanishing.len()),
            format!("10^5: {} primes, {} vanishing", full.primes_checked, full.vanishing.len()),
        ],
    );
}

fn c2(sheet: &mut Sheet) {
    let a = randomness_product(100_000);
    let b = randomness_product(1_000_000);
    let ok = (a - 0.413).abs() <= PRODUCT_TOL && (b - 0.3775).abs() <= PRODUCT_TOL;
    sheet.record(
        "C2",
        "randomness product 0.413 at 10^5 and 0.3775 at 10^6",
        ok,
        &[format!("10^5: {a:.6}, 10^6: {b:.6} (tolerance {PRODUCT_TOL})")],
    );
}

fn c3(sheet: &mut Sheet) {
    let mut ok = true;
    let mut details = Vec::new();
    for p in [3u64, 5, 11, 17, 23] {
        let r = p1_weakly_global(p, 1, P1_PREC).unwrap();
        ok &= r.points.is_empty();
        details.push(format!("p = {p}: {} points", r.points.len()));
    }
    for p in [7u64, 13, 31] {
        let r = p1_weakly_global(p, 1, P1_PREC).unwrap();
        let residues: Vec<u64> = (2..p).filter(|z| (z * z + 1 + p - z) % p == 0).collect();
        let lifts: Vec<Padic> = residues.iter().map(|&z| teichmuller_of_residue(p, z, P1_PREC).unwrap()).collect();
        let found = r.points.len() == 2
            && lifts.iter().all(|t| r.points.iter().any(|z| z.precision() >= P1_MIN_DIGITS && z.agrees_to(t, z.precision())));
        ok &= found;
        details.push(format!("p = {p}: {} points, order-6 lifts of {residues:?}: {found}", r.points.len()));
    }
    sheet.record("C3", "P1 level 1: empty for 3,5,11,17,23; the two order-6 lifts for 7,13,31", ok, &details);
}

fn c4(sheet: &mut Sheet) {
    let mut ok = true;
    let mut details = Vec::new();
    for p in [7u64, 13, 31, 61, 97] {
        let r = p1_weakly_global(p, 2, P1_PREC).unwrap();
        ok &= r.points.is_empty();
        details.push(format!("p = {p}: {} points", r.points.len()));
    }
    sheet.record("C4", "P1 level 2 empty for 7,13,31,61,97", ok, &details);
}

fn c5(sheet: &mut Sheet) {
    let mut ok = true;
    let mut details = Vec::new();
    for p in [3u64, 5, 7] {
        let r = p1_s2_weakly_global(p, P1_PREC).unwrap();
        let want = [rational(p, 2, 1, P1_PREC), rational(p, 1, 2, P1_PREC), rational(p, -1, 1, P1_PREC)];
        let equal = r.points.len() == 3
            && want.iter().all(|w| r.points.iter().any(|z| z.agrees_to(w, S2_MATCH_DIGITS)));
        ok &= equal;
        details.push(format!("p = {p}: {} points, equals {{2, 1/2, -1}}: {equal}", r.points.len()));
    }
    let p = 11;
    let r = p1_s2_weakly_global(p, P1_PREC).unwrap();
    let base = [rational(p, 2, 1, P1_PREC), rational(p, 1, 2, P1_PREC), rational(p, -1, 1, P1_PREC)];
    let has_base = base.iter().all(|w| r.points.iter().any(|z| z.agrees_to(w, S2_MATCH_DIGITS)));
    let golden: Vec<&Padic> = r
        .points
        .iter()
        .filter(|z| {
            let q = &(&(*z * *z) + *z) - &Padic::one(p, P1_PREC);
            q.is_zero() || q.valuation() >= S2_MATCH_DIGITS
        })
        .collect();
    let mut gold_res: Vec<u64> = golden.iter().filter_map(|z| z.residue()).collect();
    gold_res.sort_unstable();
    let extra = r.points.len() - 3;
    let literal = has_base && gold_res == [3, 7] && extra == 2;
    ok &= literal;
    details.push(format!(
        "p = 11: {} points; contains 2, 1/2, -1: {has_base}; roots of z^2+z-1 at residues {gold_res:?}; {extra} points beyond {{2, 1/2, -1}} (criterion says exactly 2)",
        r.points.len()
    ));
    let mut worst = i64::MAX;
    for p in [3u64, 5, 7, 11, 13] {
        for (n, d) in [(2, 1), (1, 2), (-1, 1)] {
            let f = s2_value(&rational(p, n, d, P1_PREC), P1_PREC).unwrap();
            let digits = if f.is_zero() { f.precision() } else { f.valuation() };
            worst = worst.min(digits);
        }
    }
    ok &= worst >= S2_VALUE_DIGITS;
    details.push(format!("F(2), F(1/2), F(-1) vanish to at least {worst} digits for p = 3,5,7,11,13 (need {S2_VALUE_DIGITS})"));
    sheet.record("C5", "S = {2}: {2, 1/2, -1} for p = 3,5,7; p = 11 adds exactly the roots of z^2+z-1", ok, &details);
}

fn c6(sheet: &mut Sheet, recs: &[CurveRecord]) {
    let mut ok = true;
    let mut details = Vec::new();
    for rec in recs {
        let curve = rec.curve().unwrap();
        for p in [5u64, 7, 11, 13] {
            if !curve.has_good_reduction(p) {
                continue;
            }
            let t = Instant::now();
            let model = short_model(&curve, p, FROB_PREC + 4).unwrap();
            let frob = frobenius_matrix(&model, FROB_PREC).unwrap();
            let secs = t.elapsed().as_secs_f64();
            let (_, a_p) = count_points_fp(&curve, p).unwrap();
            let tr = frob.trace().agrees_to(&Padic::from_int(p, a_p, FROB_PREC), FROB_DIGITS);
            let det = frob.det().agrees_to(&Padic::from_int(p, p as i64, FROB_PREC), FROB_DIGITS);
            let good = tr && det && secs < FROB_SECONDS;
            ok &= good;
            if !good {
                details.push(format!("{} p = {p}: trace {tr}, det {det}, {secs:.2} s", rec.label));
            } else {
                details.push(format!("{} p = {p}: a_p = {a_p}, {secs:.2} s", rec.label));
            }
        }
    }
    sheet.record("C6", "trace(M) = a_p and det(M) = p to 10 digits, under 5 s at precision 20", ok, &details);
}

fn random_points(curve: &CurveModel, qc: &PadicCurve, p: u64, n: usize, rng: &mut ChaCha8Rng) -> Vec<PadicPoint> {
    let fp = FpCurve::new(curve, p).unwrap();
    let good: Vec<FpPoint> = fp.affine_points().into_iter().filter(|r| !fp.is_two_torsion(*r)).collect();
    let mut out = Vec::new();
    while out.len() < n {
        let FpPoint::Affine(xr, yr) = good[rng.gen_range(0..good.len())] else { continue };
        let t: i64 = rng.gen_range(0..(p as i64).pow(6));
        let x = &Padic::from_int(p, xr as i64, qc.prec) + &Padic::from_int(p, t, qc.prec).shift(1);
        let Ok(pt) = qc.lift_x(&x, yr) else { continue };
        let log = elliptic_log(curve, &pt, p, DOUBLING_PREC).unwrap();
        if !log.is_zero() && log.valuation() < DOUBLING_PREC - 2 {
            out.push(pt);
        }
    }
    out
}

fn c7(sheet: &mut Sheet, recs: &[CurveRecord]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ok = true;
    let mut other_sign_fails = false;
    let mut details = Vec::new();
    for rec in recs {
        let curve = rec.curve().unwrap();
        for p in [5u64, 7, 11] {
            if !curve.has_good_reduction(p) {
                continue;
            }
            let eng = Engine::new(&curve, p, DOUBLING_PREC).unwrap();
            let qc = PadicCurve::new(&curve, p, DOUBLING_PREC + 10);
            let mut worst = i64::MAX;
            for pt in random_points(&curve, &qc, p, DOUBLING_POINTS, &mut rng) {
                let d1 = eng.d2(&pt).unwrap();
                let d2 = eng.d2(&qc.double(&pt).unwrap()).unwrap();
                let (x, y) = (pt.x().unwrap(), pt.y().unwrap());
                let lg = padic_log(&qc.psi2(x, y)).unwrap();
                // s = −1: D2(2P) − 4·D2(P) + log(2h_b(P)).
                let res = &(&d2 - &d1.mul_int(4)) + &lg;
                let flipped = &(&d2 - &d1.mul_int(4)) - &lg;
                let digits = if res.is_zero() { res.precision() } else { res.valuation() };
                worst = worst.min(digits);
                other_sign_fails |= !(flipped.is_zero() || flipped.valuation() >= DOUBLING_DIGITS);
            }
            ok &= worst >= DOUBLING_DIGITS;
            details.push(format!("{} p = {p}: {DOUBLING_POINTS} points, residual vanishes to {worst} digits", rec.label));
        }
    }
    ok &= other_sign_fails;
    details.push(format!("s = -1 throughout; s = +1 is refuted by the same points: {other_sign_fails}"));
    sheet.record("C7", "doubling law D2(2P) - 4 D2(P) - s log(2h_b(P)) = 0 to 8 digits, one global s", ok, &details);
}

fn c8(sheet: &mut Sheet, recs: &[CurveRecord]) {
    let by = |label: &str| recs.iter().find(|r| r.label == label).unwrap();
    let mut ok = true;
    let mut details = Vec::new();
    let cfg = |p: u64, prec: i64| RunConfig { prec, match_digits: MATCH_DIGITS, ..RunConfig::new(p, 2) };
    for p in [5u64, 7, 11] {
        let r = run_record(by("378b3"), &cfg(p, EC_PREC));
        ok &= r.verdict == Verdict::Pass;
        details.push(format!(
            "378b3 p = {p}: {:?}, {} weakly global points{}",
            r.verdict,
            r.weakly_global.len(),
            r.message.map(|m| format!(" ({m})")).unwrap_or_default()
        ));
    }
    let t = Instant::now();
    let r = run_record(by("378b3"), &cfg(97, EC_PREC_97));
    let l1 = r.level1_count.unwrap_or(0);
    ok &= r.verdict == Verdict::Pass && l1 == 89;
    details.push(format!(
        "378b3 p = 97: level-1 count {l1} (want 89), {:?}, {} weakly global points, {:.1} s",
        r.verdict,
        r.weakly_global.len(),
        t.elapsed().as_secs_f64()
    ));
    let r = run_record(by("1122m2"), &cfg(5, EC_PREC));
    let n_psi = r.nonempty_psi.len();
    ok &= r.verdict == Verdict::Pass && r.w_norms == Some(384) && n_psi == 4;
    details.push(format!(
        "1122m2 p = 5: {:?} norms, {n_psi} nonempty Psi(w) (criterion says 4), {:?}, {} weakly global points",
        r.w_norms,
        r.verdict,
        r.weakly_global.len()
    ));
    for psi in &r.nonempty_psi {
        details.push(format!("  Psi{}: {} points", psi.norm, psi.points.len()));
    }
    let r = run_record(by("x891"), &cfg(5, EC_PREC));
    ok &= r.verdict == Verdict::Pass;
    details.push(format!(
        "y^2 = x^3 - 891x + 4374 p = 5: {:?}, {} weakly global points, override {:?}",
        r.verdict,
        r.weakly_global.len(),
        r.assumptions.w_override
    ));
    sheet.record("C8", "Theorem 1.3 end to end on 378b3, 1122m2 and the non-minimal Z/4 curve", ok, &details);
}

fn c9(sheet: &mut Sheet, recs: &[CurveRecord]) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut details = Vec::new();
    let mut all = true;
    let mut check = |name: &str, ok: bool| {
        all &= ok;
        details.push(format!("{name}: {}", if ok { "ok" } else { "FAILED" }));
    };

    let p = 7;
    let prec = 20;
    let mut ok = true;
    for _ in 0..50 {
        let a = Padic::from_int(p, rng.gen_range(1..7i64.pow(8)) * 7 + rng.gen_range(1..7), prec);
        let b = Padic::from_int(p, rng.gen_range(1..7i64.pow(8)) * 7 + rng.gen_range(1..7), prec);
        let lhs = padic_log(&(&a * &b)).unwrap();
        let rhs = &padic_log(&a).unwrap() + &padic_log(&b).unwrap();
        ok &= lhs.agrees_to(&rhs, prec - 1);
    }
    check("log(ab) = log a + log b (50 unit pairs, p = 7)", ok);

    let mut ok = true;
    for _ in 0..50 {
        let x = Padic::from_int(p, rng.gen_range(1..7i64.pow(10)), prec).shift(1);
        ok &= padic_log(&padic_exp(&x).unwrap()).unwrap().agrees_to(&x, prec - 1);
    }
    check("log(exp x) = x on pZ_p (50 samples)", ok);

    let mut ok = true;
    for r in 1..p {
        let t = teichmuller_of_residue(p, r, prec).unwrap();
        ok &= t.residue() == Some(r) && t.pow(p as i64).unwrap().agrees_to(&t, prec);
    }
    check("Teichmuller: t^p = t and t = r mod p", ok);

    let ok = (1..=50u32).all(|n| {
        let w = w_set(2, n, 5, 8).unwrap();
        w.exact.len() == n as usize / 2 + 1 && w.values[0] == "0"
    });
    check("W_l symmetric with floor(N/2) + 1 values, N <= 50", ok);

    let r378 = recs.iter().find(|r| r.label == "378b3").unwrap();
    let curve = r378.curve().unwrap();
    let eng = Engine::new(&curve, 11, 10).unwrap();
    let norms = w_norms(&w_sets(&curve, 11, 10, &BTreeMap::new()).unwrap());
    let res = level2_set_rank0(&eng, &norms, MatchPolicy::default()).unwrap();
    let total: usize = res.psi.iter().map(|s| s.points.len()).sum();
    let matched = res.points.iter().filter(|lp| matches!(lp.assignment, selmer::Assignment::Matched { .. })).count();
    check("Psi(w) disjoint with union the D2-filtered level-1 set", total == res.union().len() && total == matched);

    let e37 = recs.iter().find(|r| r.label == "37a1").unwrap().curve().unwrap();
    let eng = Engine::new(&e37, 7, 12).unwrap();
    let qc = PadicCurve::new(&e37, 7, 24);
    let pts = random_points(&e37, &qc, 7, 10, &mut rng);
    let mut ok = true;
    for pt in &pts {
        let got = eng.integrals(pt).unwrap().i_alpha;
        ok &= got.agrees_to(&elliptic_log(&e37, pt, 7, 14).unwrap(), 10);
    }
    check("I_alpha = elliptic_log (10 random points, 37a1, p = 7)", ok);

    let mut ok = true;
    for pt in &pts {
        let PadicPoint::Affine { x, .. } = pt else { continue };
        let FpPoint::Affine(_, yr) = pt.reduction().unwrap() else { continue };
        let near = |k: i64| qc.lift_x(&(x + &Padic::from_int(7, k, 24).shift(1)), yr).unwrap();
        let (a, b, c) = (pt.clone(), near(3), near(-5));
        let ab = eng.tiny_integrals(&a, &b).unwrap();
        let bc = eng.tiny_integrals(&b, &c).unwrap();
        let ac = eng.tiny_integrals(&a, &c).unwrap();
        let composed = &(&ab.d2 + &bc.d2) + &(&ab.i_beta * &bc.i_alpha);
        ok &= composed.agrees_to(&ac.d2, 9) && (&ab.i_alpha + &bc.i_alpha).agrees_to(&ac.i_alpha, 9);
    }
    check("D2 path independence: a -> b -> c agrees with a -> c", ok);

    let small: Vec<CurveRecord> = recs.iter().filter(|r| r.label == "378b3" || r.label == "x891").cloned().collect();
    let cfg = RunConfig { prec: 10, ..RunConfig::new(11, 2) };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string(&run_batch(&small, &cfg)).unwrap())
    };
    check("reports identical with 1 and 4 threads", run(1) == run(4));

    sheet.record("C9", "property suites", all, &details);
}

fn main() {
    let recs = fixtures();
    let mut sheet = Sheet { lines: Vec::new() };
    c1(&mut sheet);
    c2(&mut sheet);
    c3(&mut sheet);
    c4(&mut sheet);
    c5(&mut sheet);
    c6(&mut sheet, &recs);
    c7(&mut sheet, &recs);
    c8(&mut sheet, &recs);
    c9(&mut sheet, &recs);
    let unexpected: Vec<&str> =
        sheet.lines.iter().filter(|l| !l.ok && !KNOWN_DEVIATIONS.contains(&l.id)).map(|l| l.id).collect();
    let passed = sheet.lines.iter().filter(|l| l.ok).count();
    println!("{passed}/{} criteria pass; known deviations: {KNOWN_DEVIATIONS:?}", sheet.lines.len());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
