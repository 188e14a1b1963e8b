use num_bigint::BigInt;
use num_traits::Zero;

use crate::fp::Fp;
use crate::number::{pow_p, Padic};
use crate::PadicError;

fn floor_log(p: u64, k: u64) -> i64 {
    let mut n = 0;
    let mut q = p;
    while q <= k {
        n += 1;
        q = q.saturating_mul(p);
    }
    n
}

/// Iwasawa logarithm: `log p = 0`, Teichmüller roots map to 0.
pub fn padic_log(x: &Padic) -> Result<Padic, PadicError> {
    if x.is_zero() {
        return Err(PadicError::Domain("logarithm of zero".into()));
    }
    let p = x.p();
    let r = x.rel_precision();
    let u = Padic::from_parts(p, x.unit().clone(), 0, r)?;
    let y = u.pow(p as i64 - 1)? - Padic::one(p, r);
    if y.is_zero() {
        return Ok(Padic::zero(p, r));
    }
    let w = y.valuation();
    debug_assert!(w >= 1);
    let mut sum = Padic::zero(p, r);
    let mut power = y.clone();
    let mut k: i64 = 1;
    loop {
        if k * w - floor_log(p, k as u64) >= r {
            break;
        }
        let term = power.div_int(k);
        sum = if k % 2 == 1 { sum + term } else { sum - term };
        power = &power * &y;
        k += 1;
    }
    Ok(sum.div_int(p as i64 - 1).with_prec(r))
}

/// Exponential on `p Z_p`.
pub fn padic_exp(x: &Padic) -> Result<Padic, PadicError> {
    let p = x.p();
    if x.is_zero() {
        return Ok(Padic::one(p, x.precision()));
    }
    if x.valuation() < 1 {
        return Err(PadicError::Convergence(format!(
            "exp needs valuation >= 1, got {}",
            x.valuation()
        )));
    }
    let n = x.precision();
    let w = x.valuation();
    let mut sum = Padic::one(p, n);
    let mut term = Padic::one(p, n);
    let mut fact_val = 0i64;
    let mut k: i64 = 1;
    loop {
        let mut kk = k as u64;
        while kk % p == 0 {
            fact_val += 1;
            kk /= p;
        }
        if k * w - fact_val >= n && k > 1 {
            break;
        }
        term = (&term * x).div_int(k);
        sum = sum + &term;
        k += 1;
    }
    Ok(sum.with_prec(n))
}

/// Teichmüller representative of a residue class, to absolute precision `prec`.
pub fn teichmuller_of_residue(p: u64, r: u64, prec: i64) -> Result<Padic, PadicError> {
    if r % p == 0 {
        return Err(PadicError::Domain("Teichmüller lift of a non-unit".into()));
    }
    let m = pow_p(p, prec as u32);
    let e = pow_p(p, (prec - 1).max(0) as u32);
    let t = BigInt::from(r % p).modpow(&e, &m);
    Ok(Padic::from_bigint(p, &t, prec))
}

/// `ω(a)`: the (p−1)-st root of unity congruent to the unit `a`.
pub fn teichmuller(a: &Padic) -> Result<Padic, PadicError> {
    if !a.is_unit() {
        return Err(PadicError::Domain("Teichmüller lift of a non-unit".into()));
    }
    teichmuller_of_residue(a.p(), a.residue().unwrap(), a.precision())
}

/// Square root of `a` congruent to `r0` (times the right power of p) by Newton iteration.
///
/// `a` must have even valuation and `r0^2 ≡ unit(a) (mod p)`.
pub fn sqrt_with_residue(a: &Padic, r0: u64) -> Result<Padic, PadicError> {
    let p = a.p();
    if a.is_zero() {
        let half = a.precision().div_euclid(2);
        return Ok(Padic::zero(p, half));
    }
    let v = a.valuation();
    if v % 2 != 0 {
        return Err(PadicError::Domain("square root of odd valuation".into()));
    }
    let f = Fp::new(p);
    let u0 = a.residue_unit();
    if f.mul(r0, r0) != u0 || r0 % p == 0 {
        return Err(PadicError::Domain("residue is not a square root".into()));
    }
    let rel = a.rel_precision();
    let u = Padic::from_parts(p, a.unit().clone(), 0, rel)?;
    let mut t = Padic::from_int(p, r0 as i64, rel);
    let mut known = 1i64;
    while known < rel {
        t = (&t + &u / &t).div_int(2);
        known *= 2;
    }
    let t = (&t + &u / &t).div_int(2);
    debug_assert!(!t.unit().is_zero());
    Ok(t.shift(v / 2))
}
