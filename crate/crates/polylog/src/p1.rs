//! Weakly global points of `P¹ ∖ {0, 1, ∞}` over Z_p.

use padic::{padic_log, series_zeros_in_disk, teichmuller_of_residue, Fp, Padic, Series};
use serde::{Deserialize, Serialize};

use crate::li2::{g2_series, li2_at_root_of_unity, li2_with};
use crate::PolylogError;

/// Values of the coordinates of `j_p` at a point of the set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub z: Padic,
    pub log_z: Padic,
    pub log_one_minus_z: Padic,
    /// `Li_2(z)`; for the S = {2} variant, `2Li_2(z) + log z·log(1−z)`.
    pub value: Padic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct P1WeaklyGlobalReport {
    pub p: u64,
    pub level: u8,
    pub s_variant: bool,
    pub points: Vec<Padic>,
    pub evidence: Vec<Evidence>,
}

fn check_prime(p: u64) -> Result<(), PolylogError> {
    if p < 3 || p % 2 == 0 {
        return Err(PolylogError::Domain(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

/// Level 1: `log z = log(1 − z) = 0` forces `z` and `1 − z` to be roots of unity,
/// i.e. `z² − z + 1 = 0`. Level 2 keeps those with `Li_2(z) = 0`.
pub fn p1_weakly_global(p: u64, level: u8, prec: i64) -> Result<P1WeaklyGlobalReport, PolylogError> {
    check_prime(p)?;
    if !(1..=2).contains(&level) {
        return Err(PolylogError::Domain(format!("level {level} is not 1 or 2")));
    }
    let mut roots = if p % 3 == 1 { Fp::new(p).elements_of_order(6) } else { Vec::new() };
    roots.sort_unstable();
    let g2 = if level == 2 && !roots.is_empty() { Some(g2_series(p, prec)?) } else { None };
    let mut points = Vec::new();
    let mut evidence = Vec::new();
    for r in roots {
        let z = teichmuller_of_residue(p, r, prec)?;
        let one_minus = &z.one_like() - &z;
        let value = match &g2 {
            Some(g) => li2_with(g, &z)?,
            None => Padic::zero(p, prec),
        };
        let keep = level == 1 || value.is_zero();
        evidence.push(Evidence { log_z: padic_log(&z)?, log_one_minus_z: padic_log(&one_minus)?, value, z: z.clone() });
        if keep {
            points.push(z);
        }
    }
    Ok(P1WeaklyGlobalReport { p, level, s_variant: false, points, evidence })
}

/// `log(1 + u·s)` as a series in `s`, `v(u) ≥ 1`.
fn log_one_plus(u: &Padic, order: usize) -> Series {
    let p = u.p();
    let mut c = vec![Padic::zero(p, u.precision()); order];
    let mut pw = u.clone();
    for (k, slot) in c.iter_mut().enumerate().skip(1) {
        let t = pw.div_int(k as i64);
        *slot = if k % 2 == 1 { t } else { -t };
        pw = &pw * u;
    }
    Series::new(p, 0, c, order as i64 - 1)
}

/// `1/(a + b·s)` for a unit `a` and `v(b) ≥ 1`.
fn inverse_linear(a: &Padic, b: &Padic, order: usize) -> Result<Series, PolylogError> {
    let mut c = vec![a.zero_like(); order.max(2)];
    c[0] = a.clone();
    c[1] = b.clone();
    c.truncate(order);
    Ok(Series::from_coeffs(a.p(), c).inverse()?.with_tail(order as i64))
}

/// `F(z) = 2Li_2(z) + log z·log(1 − z)` on the disk of the Teichmüller point `c`,
/// in `z = c + p·s`.
pub fn s2_disk_series(c: &Padic, li2_c: &Padic, order: usize) -> Result<Series, PolylogError> {
    let p = c.p();
    let prec = c.precision();
    let pp = Padic::from_int(p, p as i64, prec + 1);
    let one = c.one_like();
    let d = &one - c;
    let log_z = log_one_plus(&pp.try_div(c)?, order);
    let log_1mz = log_one_plus(&(-pp.try_div(&d)?), order).add_constant(&padic_log(&d)?);
    let inv_z = inverse_linear(c, &pp, order)?;
    let inv_1mz = inverse_linear(&d, &-pp.clone(), order)?;
    // dF = (−log(1−z)/z − log z/(1−z))·p·ds
    let deriv = log_1mz.mul(&inv_z).add(&log_z.mul(&inv_1mz)).scale(&-pp);
    Ok(deriv.integrate()?.add_constant(&li2_c.mul_int(2)))
}

/// Zero set of `2Li_2(z) + log z·log(1 − z)` on `{|z| = |1 − z| = 1}`.
pub fn p1_s2_weakly_global(p: u64, prec: i64) -> Result<P1WeaklyGlobalReport, PolylogError> {
    check_prime(p)?;
    let g2 = g2_series(p, prec + 2)?;
    let order = (prec + 2 * (prec as f64).log(p as f64).ceil() as i64 + 8) as usize;
    let mut points = Vec::new();
    let mut evidence = Vec::new();
    for r in 2..p {
        let c = teichmuller_of_residue(p, r, prec + 4)?;
        let li2 = li2_with(&g2, &c)?;
        let f = s2_disk_series(&c, &li2, order)?;
        let zeros = series_zeros_in_disk(&f, 0)?;
        for s in zeros.zeros {
            let z = (&c + &s.shift(1)).with_prec(prec);
            let one_minus = &z.one_like() - &z;
            let log_z = padic_log(&z)?;
            let log_1mz = padic_log(&one_minus)?;
            let value = f.eval(&s)?;
            evidence.push(Evidence { z: z.clone(), log_z, log_one_minus_z: log_1mz, value });
            points.push(z);
        }
    }
    Ok(P1WeaklyGlobalReport { p, level: 2, s_variant: true, points, evidence })
}

/// `2Li_2(z) + log z·log(1 − z)` at a point with `|z| = |1 − z| = 1`, through its disk.
pub fn s2_value(z: &Padic, prec: i64) -> Result<Padic, PolylogError> {
    let p = z.p();
    let r = z.residue().filter(|&r| r >= 2).ok_or_else(|| PolylogError::Domain("z must reduce away from 0 and 1".into()))?;
    let c = teichmuller_of_residue(p, r, prec + 4)?;
    let li2 = li2_at_root_of_unity(&c, prec + 2)?;
    let order = (prec + 2 * (prec as f64).log(p as f64).ceil() as i64 + 8) as usize;
    let f = s2_disk_series(&c, &li2, order)?;
    Ok(f.eval(&(z - &c).shift(-1))?)
}
