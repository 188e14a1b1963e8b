use padic::{Padic, Series};

use crate::gseries::g_series_padic;
use crate::PolylogError;

fn ceil_log(p: u64, n: u64) -> i64 {
    let mut k = 0;
    let mut q = 1u64;
    while q < n {
        q = q.saturating_mul(p);
        k += 1;
    }
    k
}

/// Number of terms of `g_2` needed for `prec` digits at a unit argument: the
/// `v^k` coefficient has valuation at least `k/(p−1) − 2·log_p k`.
pub fn g2_terms(p: u64, prec: i64) -> usize {
    let mut terms = ((p - 1) as i64 * (prec + 2)) as usize;
    loop {
        let need = ((p - 1) as i64 * (prec + 2 + 2 * ceil_log(p, terms as u64 + 1))) as usize;
        if need <= terms {
            return terms;
        }
        terms = need;
    }
}

/// `g_2` ready for evaluation on the closed unit disk to `prec` digits.
pub fn g2_series(p: u64, prec: i64) -> Result<Series, PolylogError> {
    let terms = g2_terms(p, prec);
    Ok(g_series_padic(p, 2, terms, prec + 2)?.with_tail(prec + 2))
}

/// `Li_2(ζ) = p²/(p² − 1)·g_2(1/(1 − ζ))` for a (p−1)-st root of unity `ζ ≠ 1`.
pub fn li2_at_root_of_unity(zeta: &Padic, prec: i64) -> Result<Padic, PolylogError> {
    li2_with(&g2_series(zeta.p(), prec)?, zeta)
}

/// As [`li2_at_root_of_unity`] with a precomputed `g_2`.
pub fn li2_with(g2: &Series, zeta: &Padic) -> Result<Padic, PolylogError> {
    let p = zeta.p();
    if !zeta.is_unit() {
        return Err(PolylogError::Domain("ζ must be a unit".into()));
    }
    let check = zeta.pow(p as i64 - 1)?;
    if !(&check - &check.one_like()).is_zero() {
        return Err(PolylogError::Domain("ζ is not a (p−1)-st root of unity".into()));
    }
    let one = zeta.one_like();
    let d = &one - zeta;
    if !d.is_unit() {
        return Err(PolylogError::Domain("Li_2 at ζ = 1".into()));
    }
    let v = d.inv()?;
    let p2 = (p as i64) * (p as i64);
    let c = Padic::from_ratio(p, &p2.into(), &(p2 - 1).into(), zeta.precision() + 2);
    Ok(&c * &g2.eval(&v)?)
}
