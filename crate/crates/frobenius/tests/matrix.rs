use ecmodel::{count_points_fp, CurveModel};
use frobenius::{frobenius_matrix, short_model};
use padic::Padic;

fn fixtures() -> Vec<CurveModel> {
    vec![
        CurveModel::new("32a2", [0, 0, 0, -1, 0]).unwrap(),
        CurveModel::new("37a1", [0, 0, 1, -1, 0]).unwrap(),
        CurveModel::new("378b3", [1, -1, 0, -1062, 13590]).unwrap(),
        CurveModel::new("1122m2", [1, 0, 0, -41608, -90515392]).unwrap(),
        CurveModel::new("17-scaled", [0, 0, 0, -891, 4374]).unwrap(),
    ]
}

#[test]
fn congruent_curve_at_five() {
    let e = &fixtures()[0];
    let sm = short_model(e, 5, 20).unwrap();
    assert!(sm.is_identity());
    let fd = frobenius_matrix(&sm, 20).unwrap();
    assert!(fd.prec >= 20, "achieved {}", fd.prec);
    assert_eq!(fd.trace(), Padic::from_int(5, -2, fd.prec));
    assert_eq!(fd.det(), Padic::from_int(5, 5, fd.prec));
}

#[test]
fn charpoly_matches_point_counts() {
    for e in fixtures() {
        for p in [5u64, 7, 11, 13] {
            if !e.has_good_reduction(p) {
                continue;
            }
            let t0 = std::time::Instant::now();
            let sm = short_model(&e, p, 20).unwrap();
            let fd = frobenius_matrix(&sm, 20).unwrap();
            let (_, ap) = count_points_fp(&e, p).unwrap();
            let tr = fd.trace();
            let det = fd.det();
            println!("{} p={p} prec={} {:?}", e.label, fd.prec, t0.elapsed());
            assert!(tr.agrees_to(&Padic::from_int(p, ap, 40), 10), "{} p={p}: trace {tr} vs {ap}", e.label);
            assert!(det.agrees_to(&Padic::from_int(p, p as i64, 40), 10), "{} p={p}: det {det}", e.label);
        }
    }
}
