use padic::teichmuller_of_residue;
use polylog::{g2_series, li2_with};
use proptest::prelude::*;

const PREC: i64 = 10;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `Li_2(ζ²) = 2(Li_2(ζ) + Li_2(−ζ))` on roots of unity away from ±1.
    #[test]
    fn li2_distribution(p in prop::sample::select(vec![7u64, 11, 13, 17]), r in 2u64..100) {
        let r = r % p;
        prop_assume!(r > 1 && r != p - 1);
        prop_assume!(r * r % p != 1);
        let g2 = g2_series(p, PREC).unwrap();
        let z = teichmuller_of_residue(p, r, PREC + 4).unwrap();
        let lhs = li2_with(&g2, &(&z * &z)).unwrap();
        let sum = &li2_with(&g2, &z).unwrap() + &li2_with(&g2, &-&z).unwrap();
        let d = &lhs - &(&sum + &sum);
        prop_assert!(d.is_zero() || d.valuation() >= PREC, "p={} r={}: {}", p, r, d);
    }
}
