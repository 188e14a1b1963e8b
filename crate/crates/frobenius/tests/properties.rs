use ecmodel::{count_points_fp, CurveModel};
use frobenius::{frobenius_matrix, short_model};
use padic::Padic;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn charpoly_of_random_curves(a in prop::array::uniform5(-9i64..=9), p in prop::sample::select(vec![5u64, 7, 11])) {
        let Ok(e) = CurveModel::new("random", a) else { return Ok(()) };
        prop_assume!(e.has_good_reduction(p));
        let prec = 8;
        let fd = frobenius_matrix(&short_model(&e, p, prec).unwrap(), prec).unwrap();
        let (_, ap) = count_points_fp(&e, p).unwrap();
        prop_assert!(fd.trace().agrees_to(&Padic::from_int(p, ap, prec), prec - 1), "{:?} p={}: {}", a, p, fd.trace());
        prop_assert!(fd.det().agrees_to(&Padic::from_int(p, p as i64, prec), prec - 1));
    }
}
