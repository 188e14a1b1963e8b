use num_bigint::BigInt;
use padic::{teichmuller_of_residue, Fp, Padic};
use polylog::{g2_series, g_series_mod_p, g_series_padic, li2_at_root_of_unity, li2_with};

const PREC: i64 = 15;

/// `Σ_{p∤n} z^n/n²` at a Teichmüller point via `n = a + p·m`:
/// `Σ_a z^a a^{-2} Σ_j (−1)^j (j+1) (p/a)^j R_j(z^p)` with
/// `R_j(w) = Σ_m m^j w^m = N_j(w)/(1 − w)^{j+1}`, `N_{j+1} = w(1−w)N_j' + (j+1)·w·N_j`.
fn li2_reference(zeta: &Padic, prec: i64) -> Padic {
    let p = zeta.p();
    let work = prec + 6;
    let jmax = (prec + 6) as usize;
    let mut num: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for j in 0..jmax {
        let n = &num[j];
        let mut next = vec![BigInt::from(0); n.len() + 2];
        for (i, c) in n.iter().enumerate() {
            // w(1−w)·i·c·w^(i−1) = i·c·(w^i − w^(i+1))
            let ic = c * BigInt::from(i as u64);
            next[i] += &ic;
            next[i + 1] -= &ic;
            next[i + 1] += c * BigInt::from(j as u64 + 1);
        }
        num.push(next);
    }
    let z = zeta.with_prec(work);
    let w = z.pow(p as i64).unwrap();
    let one = Padic::one(p, work);
    let inv1w = (&one - &w).inv().unwrap();
    let mut r = Vec::new();
    let mut denom = inv1w.clone();
    for n in &num {
        let mut acc = Padic::zero(p, work);
        for c in n.iter().rev() {
            acc = &(&acc * &w) + &Padic::from_bigint(p, c, work);
        }
        r.push(&acc * &denom);
        denom = &denom * &inv1w;
    }
    let pp = Padic::from_int(p, p as i64, work);
    let mut total = Padic::zero(p, work);
    let mut za = one.clone();
    for a in 1..p as i64 {
        za = &za * &z;
        let ainv = Padic::from_int(p, a, work).inv().unwrap();
        let step = &pp * &ainv;
        let mut inner = Padic::zero(p, work);
        let mut pw = one.clone();
        for (j, rj) in r.iter().enumerate() {
            let c = if j % 2 == 0 { j as i64 + 1 } else { -(j as i64 + 1) };
            inner = &inner + &(&pw * rj).mul_int(c);
            pw = &pw * &step;
        }
        total = &total + &(&(&za * &(&ainv * &ainv)) * &inner);
    }
    let p2 = (p * p) as i64;
    &Padic::from_ratio(p, &p2.into(), &(p2 - 1).into(), work) * &total
}

fn sixth_roots(p: u64) -> Vec<u64> {
    Fp::new(p).elements_of_order(6)
}

#[test]
fn g_vanishes_at_zero() {
    for p in [5u64, 7, 11] {
        for n in 1..=2 {
            assert_eq!(g_series_mod_p(p, n).unwrap()[0], 0);
            assert!(g_series_padic(p, n, 40, 10).unwrap().coeff(0).is_zero());
        }
    }
}

#[test]
fn g2_mod_p_has_degree_p_minus_2() {
    for p in [7u64, 13, 31] {
        let g = g_series_mod_p(p, 2).unwrap();
        assert_eq!(g.iter().rposition(|&c| c != 0), Some(p as usize - 2), "p={p}");
    }
}

#[test]
fn g0_closed_form_mod_p() {
    for p in [7u64, 13, 31] {
        let f = Fp::new(p);
        let g0 = g_series_mod_p(p, 0).unwrap();
        for v in [2u64, 3, 5, 6, 1, 0, 4, p - 1, p - 2, p / 2] {
            let lhs = g0.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, v), c));
            let vm1 = f.sub(v, 1);
            let den = f.sub(f.pow(v, p), f.pow(vm1, p));
            let rhs = f.sub(vm1, f.mul(f.pow(vm1, p), f.inv(den)));
            assert_eq!(lhs, rhs, "p={p} v={v}");
        }
    }
}

#[test]
fn padic_g_reduces_to_mod_p_g() {
    for p in [5u64, 7, 13] {
        for n in 0..=2 {
            let modp = g_series_mod_p(p, n).unwrap();
            let series = g_series_padic(p, n, 3 * p as usize, 8).unwrap();
            for (k, c) in series.coeffs().iter().enumerate() {
                let want = modp.get(k).copied().unwrap_or(0);
                assert!(c.valuation() >= 0, "p={p} n={n} k={k}: {c}");
                assert_eq!(c.residue().unwrap_or(0), want, "p={p} n={n} k={k}");
            }
        }
    }
}

#[test]
fn li2_matches_the_rational_function_route() {
    for p in [5u64, 7, 11, 13] {
        let g2 = g2_series(p, PREC).unwrap();
        for r in 2..p {
            let zeta = teichmuller_of_residue(p, r, PREC + 4).unwrap();
            let got = li2_with(&g2, &zeta).unwrap();
            let want = li2_reference(&zeta, PREC + 2);
            assert!(got.agrees_to(&want, PREC), "p={p} r={r}: {got} vs {want}");
        }
    }
}

#[test]
fn li2_reflection_at_roots_of_unity() {
    let p = 11;
    let g2 = g2_series(p, PREC).unwrap();
    for r in 2..p - 1 {
        let z = teichmuller_of_residue(p, r, PREC + 4).unwrap();
        let zi = z.inv().unwrap();
        let s = &li2_with(&g2, &z).unwrap() + &li2_with(&g2, &zi).unwrap();
        assert!(s.is_zero() || s.valuation() >= PREC, "r={r}: {s}");
    }
    for p in [7u64, 13, 19] {
        let z = teichmuller_of_residue(p, sixth_roots(p)[0], PREC + 4).unwrap();
        let s = &li2_at_root_of_unity(&z, PREC).unwrap() + &li2_at_root_of_unity(&z.inv().unwrap(), PREC).unwrap();
        assert!(s.is_zero() || s.valuation() >= PREC);
    }
}

#[test]
fn li2_at_sixth_roots_is_a_unit_multiple_of_p_squared() {
    for p in [7u64, 13] {
        let g2 = g_series_mod_p(p, 2).unwrap();
        let f = Fp::new(p);
        for r in sixth_roots(p) {
            let z = teichmuller_of_residue(p, r, PREC + 4).unwrap();
            let li = li2_at_root_of_unity(&z, PREC).unwrap();
            assert_eq!(li.valuation(), 2, "p={p}");
            // Li_2/p² ≡ −g_2(ζ6) (mod p), and 1/(1 − ζ6) = ζ6
            let modp = g2.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, r), c));
            assert_eq!(li.shift(-2).residue().unwrap(), f.neg(modp));
        }
    }
}
