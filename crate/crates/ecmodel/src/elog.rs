use padic::Padic;

use crate::curve::CurveModel;
use crate::formal::FormalGroup;
use crate::fp::count_points_fp;
use crate::qp::{PadicCurve, PadicPoint};
use crate::EcError;

fn floor_log(p: u64, k: u64) -> i64 {
    let mut n = 0;
    let mut q = p;
    while q <= k {
        n += 1;
        q = q.saturating_mul(p);
    }
    n
}

/// Number of formal-log terms that pin `λ(z)` to `O(p^prec)` when `v(z) ≥ vz`.
pub fn log_terms(p: u64, prec: i64, vz: i64) -> usize {
    let vz = vz.max(1);
    let mut t = 2usize;
    while (t as i64) * vz - floor_log(p, t as u64) < prec {
        t += 1;
    }
    t
}

/// `λ(z)` for `v(z) ≥ 1`, evaluated from the exact expansion.
pub fn formal_log_at(fg: &FormalGroup, z: &Padic, prec: i64) -> Result<Padic, EcError> {
    let p = z.p();
    let vz = z.valuation();
    if z.is_zero() {
        return Ok(Padic::zero(p, prec.min(z.precision())));
    }
    if vz < 1 {
        return Err(EcError::Domain("formal logarithm needs v(z) ≥ 1".into()));
    }
    let t = log_terms(p, prec, vz);
    if t >= fg.log.len() {
        return Err(EcError::Precision(format!("formal group known to {} terms, {t} needed", fg.log.len())));
    }
    let work = prec + floor_log(p, t as u64) + 1;
    let mut acc = Padic::zero(p, work);
    for k in (1..t).rev() {
        let c = &fg.log[k];
        let ck = Padic::from_ratio(p, c.numer(), c.denom(), work);
        acc = &(&acc * z) + &ck;
    }
    acc = &acc * z;
    // Omitted terms have valuation at least t·v(z) − log_p t.
    let cap = (t as i64) * vz - floor_log(p, t as u64);
    Ok(acc.with_prec(cap.min(prec)))
}

/// p-adic elliptic logarithm `log_ω(P)` for the invariant differential.
///
/// With `m = #Ẽ(F_p)` the multiple `mP` lies in the formal group, so
/// `log_ω(P) = λ(z(mP))/m`; torsion points give 0.
pub fn elliptic_log(curve: &CurveModel, pt: &PadicPoint, p: u64, prec: i64) -> Result<Padic, EcError> {
    let (m, _) = count_points_fp(curve, p)?;
    let vm = {
        let mut v = 0;
        let mut n = m;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        v
    };
    let work = prec + vm + 6;
    let ec = PadicCurve::new(curve, p, work.max(pt.precision().min(work)));
    let mp = ec.scalar_mul(m as i64, pt)?;
    let z = match mp.z() {
        None => return Ok(Padic::zero(p, prec)),
        Some(z) => z,
    };
    if z.is_zero() {
        return Ok(Padic::zero(p, prec.min(z.precision() - vm)));
    }
    let fg = FormalGroup::new(curve, log_terms(p, prec + vm, z.valuation()) + 8);
    let l = formal_log_at(&fg, &z, prec + vm)?;
    Ok(l.div_int(m as i64).with_prec(prec))
}
