use std::sync::OnceLock;

use coleman::engine::{DiskKind, Engine};
use ecmodel::{CurveModel, FpCurve, FpPoint, PadicCurve, PadicPoint};
use padic::Padic;
use proptest::prelude::*;

const PREC: i64 = 10;
const CHECK: i64 = 7;

struct Setup {
    eng: Engine,
    qc: PadicCurve,
    residues: Vec<FpPoint>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let e = CurveModel::new("32a2", [0, 0, 0, -1, 0]).unwrap();
        let eng = Engine::new(&e, 11, PREC).unwrap();
        let qc = PadicCurve::new(&e, 11, PREC + 6);
        let residues = FpCurve::new(&e, 11).unwrap().affine_points();
        Setup { eng, qc, residues }
    })
}

/// A point in the disk of `residue` displaced by `t·p`.
fn in_disk(s: &Setup, residue: FpPoint, t: i64) -> PadicPoint {
    let p = s.qc.p;
    let FpPoint::Affine(xr, yr) = residue else { unreachable!() };
    let step = Padic::from_int(p, t, PREC + 6).shift(1);
    if let Ok(pt) = s.qc.lift_x(&(&Padic::from_int(p, xr as i64, PREC + 6) + &step), yr) {
        return pt;
    }
    let c = s.qc.disk_center(residue).unwrap();
    s.qc.lift_y(&(c.y().unwrap() + &step), xr).unwrap()
}

fn agree(a: &Padic, b: &Padic) -> bool {
    a.agrees_to(b, CHECK)
}

#[test]
fn tiny_integral_to_itself_vanishes() {
    let s = setup();
    let pt = in_disk(s, s.residues[0], 4);
    let v = s.eng.tiny_integrals(&pt, &pt).unwrap();
    for c in [v.i_alpha, v.i_beta, v.d2] {
        assert!(c.is_zero() || c.valuation() >= CHECK);
    }
}

#[test]
fn tiny_integrals_refuse_two_disks() {
    let s = setup();
    let a = in_disk(s, s.residues[0], 1);
    let b = in_disk(s, s.residues[1], 1);
    assert!(s.eng.tiny_integrals(&a, &b).is_err());
}

#[test]
fn disk_series_reproduce_point_values() {
    let s = setup();
    let mut seen_weierstrass = false;
    for &r in &s.residues {
        let ex = s.eng.disk_expansion(r).unwrap();
        seen_weierstrass |= ex.kind == DiskKind::Weierstrass;
        // d/ds D2 = (dI_alpha/ds)·I_beta
        let lhs = ex.d2.derivative();
        let rhs = ex.i_alpha.derivative().mul(&ex.i_beta);
        for k in 0..8 {
            assert!(agree(&lhs.coeff(k), &rhs.coeff(k)), "{r:?} s^{k}");
        }
        for t in [0i64, 1, 5, 9] {
            let pt = in_disk(s, r, t);
            let sv = match ex.kind {
                DiskKind::Good => (pt.x().unwrap() - &ex.x.coeff(0)).shift(-1),
                DiskKind::Weierstrass => (pt.y().unwrap() - &ex.y.coeff(0)).shift(-1),
            };
            let want = s.eng.integrals(&pt).unwrap();
            assert!(agree(&ex.d2.eval(&sv).unwrap(), &want.d2), "{r:?} t={t}");
            assert!(agree(&ex.i_alpha.eval(&sv).unwrap(), &want.i_alpha));
            assert!(agree(&ex.x.eval(&sv).unwrap(), pt.x().unwrap()));
        }
    }
    assert!(seen_weierstrass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tiny_integrals_compose(idx in 0usize..64, t in 0i64..121, u in 0i64..121, v in 0i64..121) {
        let s = setup();
        let r = s.residues[idx % s.residues.len()];
        let (a, b, c) = (in_disk(s, r, t), in_disk(s, r, u), in_disk(s, r, v));
        let ab = s.eng.tiny_integrals(&a, &b).unwrap();
        let bc = s.eng.tiny_integrals(&b, &c).unwrap();
        let ac = s.eng.tiny_integrals(&a, &c).unwrap();
        prop_assert!(agree(&(&ab.i_alpha + &bc.i_alpha), &ac.i_alpha));
        prop_assert!(agree(&(&ab.i_beta + &bc.i_beta), &ac.i_beta));
        // ∫_a^c αβ = ∫_a^b αβ + ∫_b^c αβ + (∫_b^c α)(∫_a^b β)
        let composed = &(&ab.d2 + &bc.d2) + &(&bc.i_alpha * &ab.i_beta);
        prop_assert!(agree(&composed, &ac.d2));
    }

    #[test]
    fn d2_is_path_independent(idx in 0usize..64, t in 0i64..121, u in 0i64..121) {
        // through the disk center versus through an arbitrary waypoint q
        let s = setup();
        let r = s.residues[idx % s.residues.len()];
        let (q, pt) = (in_disk(s, r, t), in_disk(s, r, u));
        let iq = s.eng.integrals(&q).unwrap();
        let leg = s.eng.tiny_integrals(&q, &pt).unwrap();
        let via_q = &(&iq.d2 + &leg.d2) + &(&leg.i_alpha * &iq.i_beta);
        prop_assert!(agree(&via_q, &s.eng.d2(&pt).unwrap()));
    }
}
