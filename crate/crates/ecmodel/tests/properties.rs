use ecmodel::{count_points_fp, CurveModel, FpCurve, FpPoint};
use proptest::prelude::*;

fn curve(a: [i64; 5], p: u64) -> Option<(CurveModel, FpCurve)> {
    let e = CurveModel::new("random", a).ok()?;
    if !e.has_good_reduction(p) {
        return None;
    }
    let fp = FpCurve::new(&e, p).ok()?;
    Some((e, fp))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_group_law(a in prop::array::uniform5(-20i64..=20), p in prop::sample::select(vec![5u64, 7, 11, 13]), picks in prop::array::uniform3(0usize..1000)) {
        let Some((e, fp)) = curve(a, p) else { return Ok(()) };
        let affine = fp.affine_points();
        let (n, ap) = count_points_fp(&e, p).unwrap();
        prop_assert_eq!(affine.len() as u64 + 1, n);
        prop_assert_eq!(n as i64, p as i64 + 1 - ap);
        prop_assert!(ap * ap <= 4 * p as i64);
        let mut pts = vec![FpPoint::Infinity];
        pts.extend(affine);
        let [u, v, w] = picks.map(|i| pts[i % pts.len()]);
        for q in [u, v, w] {
            prop_assert!(fp.contains(q));
            prop_assert_eq!(fp.add(q, fp.neg(q)), FpPoint::Infinity);
            prop_assert_eq!(fp.mul(n as i64, q), FpPoint::Infinity);
            prop_assert_eq!(n % fp.order_of(q), 0);
        }
        prop_assert_eq!(fp.add(u, v), fp.add(v, u));
        prop_assert_eq!(fp.add(fp.add(u, v), w), fp.add(u, fp.add(v, w)));
        prop_assert_eq!(fp.mul(3, u), fp.add(u, fp.add(u, u)));
    }
}
