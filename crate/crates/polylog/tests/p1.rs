use padic::{teichmuller_of_residue, Padic};
use polylog::{p1_s2_weakly_global, p1_weakly_global, s2_value};

const PREC: i64 = 20;
const MATCH: i64 = 5;

fn rational(p: u64, n: i64, d: i64) -> Padic {
    Padic::from_ratio(p, &n.into(), &d.into(), PREC)
}

#[test]
fn level_one_is_empty_without_sixth_roots() {
    for p in [3u64, 5, 11, 17, 23] {
        let r = p1_weakly_global(p, 1, PREC).unwrap();
        assert!(r.points.is_empty(), "p={p}");
    }
}

#[test]
fn level_one_is_the_sixth_roots() {
    for (p, res) in [(7u64, [3u64, 5]), (13, [4, 10]), (31, [6, 26])] {
        let r = p1_weakly_global(p, 1, PREC).unwrap();
        let want: Vec<Padic> = res.iter().map(|&a| teichmuller_of_residue(p, a, PREC).unwrap()).collect();
        assert_eq!(r.points, want, "p={p}");
        for (z, e) in r.points.iter().zip(&r.evidence) {
            let one = z.one_like();
            assert!((&(&(z * z) - z) + &one).is_zero());
            assert!(e.log_z.is_zero() && e.log_one_minus_z.is_zero());
        }
    }
}

#[test]
fn level_two_is_empty() {
    for p in [7u64, 13, 31, 61, 97] {
        let r = p1_weakly_global(p, 2, PREC).unwrap();
        assert!(r.points.is_empty(), "p={p}");
        assert_eq!(r.evidence.len(), 2);
        assert!(r.evidence.iter().all(|e| e.value.valuation() == 2));
    }
}

#[test]
fn level_one_is_stable_under_the_symmetries() {
    // z ↦ 1 − z and z ↦ 1/z permute the two sixth roots
    let r = p1_weakly_global(13, 1, PREC).unwrap();
    for z in &r.points {
        let a = &z.one_like() - z;
        let b = z.inv().unwrap();
        assert!(r.points.contains(&a) && r.points.contains(&b));
    }
}

#[test]
fn global_points_of_the_s2_set_vanish() {
    for p in [3u64, 5, 7, 11, 13] {
        for (n, d) in [(2, 1), (1, 2), (-1, 1)] {
            let v = s2_value(&rational(p, n, d), PREC).unwrap();
            assert!(v.is_zero() || v.valuation() >= 15, "p={p} z={n}/{d}: {v}");
        }
    }
}

fn matches(points: &[Padic], z: &Padic) -> usize {
    points.iter().filter(|w| w.agrees_to(z, MATCH)).count()
}

#[test]
fn s2_set_is_exactly_the_global_points_for_small_p() {
    for p in [3u64, 5, 7] {
        let r = p1_s2_weakly_global(p, PREC).unwrap();
        assert_eq!(r.points.len(), 3, "p={p}: {:?}", r.points);
        for (n, d) in [(2, 1), (1, 2), (-1, 1)] {
            assert_eq!(matches(&r.points, &rational(p, n, d)), 1, "p={p} z={n}/{d}");
        }
    }
}

/// The six images of `z` under the anharmonic group.
fn orbit(z: &Padic) -> Vec<Padic> {
    let one = z.one_like();
    let a = &one - z;
    vec![
        z.clone(),
        a.clone(),
        z.inv().unwrap(),
        a.inv().unwrap(),
        (z - &one).try_div(z).unwrap(),
        z.try_div(&(z - &one)).unwrap(),
    ]
}

#[test]
fn s2_set_at_eleven_adds_the_golden_ratio_orbit() {
    // F(1 − z) = F(1/z) = −F(z), so the zero set is stable under the anharmonic group
    // and the two roots of z² + z − 1 bring their whole six-point orbit.
    let p = 11;
    let r = p1_s2_weakly_global(p, PREC).unwrap();
    for (n, d) in [(2, 1), (1, 2), (-1, 1)] {
        assert_eq!(matches(&r.points, &rational(p, n, d)), 1);
    }
    let extra: Vec<&Padic> = r
        .points
        .iter()
        .filter(|z| [(2, 1), (1, 2), (-1, 1)].iter().all(|&(n, d)| !z.agrees_to(&rational(p, n, d), MATCH)))
        .collect();
    let golden = |w: &Padic| {
        let q = &(&(w * w) + w) - &w.one_like();
        q.is_zero() || q.valuation() >= MATCH
    };
    let roots: Vec<u64> = extra.iter().filter(|z| golden(z)).map(|z| z.residue().unwrap()).collect();
    assert_eq!(roots.len(), 2);
    assert!(roots.contains(&3) && roots.contains(&7));
    assert_eq!(extra.len(), 6);
    for z in &extra {
        assert!(orbit(z).iter().any(golden));
        for w in orbit(z) {
            assert_eq!(matches(&r.points, &w), 1);
        }
    }
}
