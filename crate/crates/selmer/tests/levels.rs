use std::collections::BTreeMap;

use coleman::engine::Engine;
use ecmodel::{count_points_fp, elliptic_log, CurveModel, PadicCurve, PadicPoint};
use num_bigint::BigInt;
use padic::Padic;
use selmer::{level1_set, level2_set_rank0, level2_set_rank1, parse_rational, w_norms, w_sets, MatchPolicy};

fn e378() -> CurveModel {
    CurveModel::new("378b3", [1, -1, 0, -1062, 13590]).unwrap()
}

fn is_integer_point(pt: &PadicPoint, x: i64, y: i64, digits: i64) -> bool {
    let p = match pt {
        PadicPoint::Affine { x, .. } => x.p(),
        PadicPoint::Infinity => return false,
    };
    pt.agrees_to(&PadicPoint::affine(Padic::from_int(p, x, digits), Padic::from_int(p, y, digits)), digits)
}

/// The p-part of `#Ẽ(F_p)` is removed: torsion of `E(Q_p)` for odd p injects into the prime-to-p part.
fn prime_to_p(n: u64, p: u64) -> u64 {
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n
}

#[test]
fn level_one_points_are_torsion() {
    let e = e378();
    for p in [5u64, 11, 13] {
        let prec = 10;
        let engine = Engine::new(&e, p, prec).unwrap();
        let pts = level1_set(&engine).unwrap();
        let (n, _) = count_points_fp(&e, p).unwrap();
        assert_eq!((pts.len() as u64 + 1) % prime_to_p(n, p), 0, "p = {p}: {} points, #E = {n}", pts.len());
        for pt in &pts {
            let log = elliptic_log(&e, pt, p, prec).unwrap();
            assert!(log.is_zero() || log.valuation() >= prec - 2, "p = {p}: log {log} at {pt:?}");
        }
        assert!(pts.iter().any(|q| is_integer_point(q, 19, -9, prec - 2)));
        assert!(pts.iter().any(|q| is_integer_point(q, 19, -10, prec - 2)));
    }
}

#[test]
fn level_one_count_equals_prime_to_p_torsion() {
    // Torsion of E(Q_p) reduces isomorphically onto Ẽ(F_p) when p does not divide its order.
    let e = CurveModel::new("37a1", [0, 0, 1, -1, 0]).unwrap();
    for p in [5u64, 7, 11] {
        let engine = Engine::new(&e, p, 8).unwrap();
        let (n, _) = count_points_fp(&e, p).unwrap();
        assert_ne!(n % p, 0);
        assert_eq!(level1_set(&engine).unwrap().len() as u64, n - 1, "p = {p}");
    }
}

#[test]
fn torsion_of_378b3_lies_in_the_zero_norm() {
    let e = e378();
    let engine = Engine::new(&e, 5, 10).unwrap();
    let norms = w_norms(&w_sets(&e, 5, 10, &BTreeMap::new()).unwrap());
    let res = level2_set_rank0(&engine, &norms, MatchPolicy::default()).unwrap();
    let zero = norms.iter().position(|w| w.exact.iter().all(|(_, q)| q.numer() == &BigInt::from(0))).unwrap();
    for (x, y) in [(19, -9), (19, -10)] {
        assert!(res.psi[zero].points.iter().any(|q| is_integer_point(q, x, y, 8)));
    }
    assert_eq!(res.union().len(), res.points.iter().filter(|lp| matches!(lp.assignment, selmer::Assignment::Matched { .. })).count());
}

#[test]
fn non_minimal_model_with_override() {
    let e = CurveModel::new("nonminimal", [0, 0, 0, -891, 4374]).unwrap();
    let one = parse_rational("1").unwrap();
    let over = BTreeMap::from([(2u64, vec![one.clone()]), (3u64, vec![one])]);
    for p in [5u64, 7] {
        let engine = Engine::new(&e, p, 10).unwrap();
        let norms = w_norms(&w_sets(&e, p, 10, &over).unwrap());
        assert_eq!(norms.len(), 1);
        let res = level2_set_rank0(&engine, &norms, MatchPolicy::default()).unwrap();
        let found = &res.psi[0].points;
        for (x, y) in [(-9, 108), (-9, -108), (27, 0)] {
            assert!(found.iter().any(|q| is_integer_point(q, x, y, 8)), "p = {p}: ({x}, {y}) missing");
        }
    }
}

#[test]
fn rank_one_set_contains_the_integral_points() {
    let e = CurveModel::new("37a1", [0, 0, 1, -1, 0]).unwrap();
    let p = 5;
    let prec = 10;
    let engine = Engine::new(&e, p, prec).unwrap();
    let qc = PadicCurve::new(&e, p, prec + 4);
    let gen = qc.from_integers(&BigInt::from(0), &BigInt::from(0));
    let norms = w_norms(&w_sets(&e, p, prec, &BTreeMap::new()).unwrap());
    assert_eq!(norms.len(), 1);
    let res = level2_set_rank1(&engine, &gen, &norms).unwrap();
    let union = res.union();
    let integral = [(0, 0), (0, -1), (1, 0), (1, -1), (-1, 0), (-1, -1), (2, 2), (2, -3), (6, 14), (6, -15)];
    for (x, y) in integral {
        assert!(union.iter().any(|q| is_integer_point(q, x, y, 5)), "({x}, {y}) missing");
    }
}

#[test]
fn curve_1122m2_at_five() {
    let e = CurveModel::new("1122m2", [1, 0, 0, -41608, -90515392]).unwrap();
    let (p, prec) = (5u64, 12);
    let norms = w_norms(&w_sets(&e, p, prec, &BTreeMap::new()).unwrap());
    assert_eq!(norms.len(), 384);
    let engine = Engine::new(&e, p, prec).unwrap();
    let res = level2_set_rank0(&engine, &norms, MatchPolicy::default()).unwrap();
    let union = res.union();
    let known = [(752, -17800), (752, 17048), (2864, -154024), (2864, 151160)];
    assert_eq!(union.len(), 4, "{:?}", res.points);
    for (x, y) in known {
        assert!(union.iter().any(|q| is_integer_point(q, x, y, 8)), "({x}, {y}) missing");
    }
    // z and −z have the same D2, so the four points fill two norms.
    let keys: Vec<String> = res.psi.iter().filter(|s| !s.points.is_empty()).map(|s| s.norm.key()).collect();
    assert_eq!(keys, ["{2:5/3, 3:5/12, 11:5/12, 17:1/2}", "{2:5/3, 3:2/3, 11:2/3, 17:0}"]);
    assert!(!res.needs_more_precision);
}
