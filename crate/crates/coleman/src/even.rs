//! Integrals of forms `ρ(x)·dx` with `ρ` rational, poles only at roots of `f` and ∞.
//!
//! Hermite reduction splits `∫ρ` into a polynomial, a rational part over powers
//! of `f`, and a logarithmic part `Tr_{A/Q_p}(c(t)·log(x − t))`.

use frobenius::poly::{self, exact_zero, CubicSplit, Poly};
use padic::{Padic, PadicError, Series};

use crate::etale::{Cubic, Elem};

/// `Σ_m levels[m](x)/f(x)^m · dx`.
#[derive(Clone, Debug, Default)]
pub struct EvenForm {
    pub levels: Vec<Poly>,
}

impl EvenForm {
    /// Adds `c·num/f^m`.
    pub fn add_term(&mut self, m: usize, num: &[Padic], c: &Padic) {
        if self.levels.len() <= m {
            self.levels.resize(m + 1, Vec::new());
        }
        poly::add_scaled(&mut self.levels[m], num, c, 0);
    }

    /// Raises the claimed precision of every coefficient to `prec`.
    pub fn lifted(&self, prec: i64) -> EvenForm {
        let levels = self.levels.iter().map(|l| l.iter().map(|c| c.lift_exact(prec)).collect()).collect();
        EvenForm { levels }
    }
}

/// `poly(x) + Σ_{m≥1} rat[m−1](x)/f^m + Tr(log·log(x − t))`, up to a constant.
#[derive(Clone, Debug)]
pub struct EvenIntegral {
    pub poly: Poly,
    pub rat: Vec<Poly>,
    pub log: Elem,
}

pub fn integrate_even(form: &EvenForm, split: &CubicSplit, cubic: &Cubic) -> Result<EvenIntegral, PadicError> {
    let f = &split.f;
    let p = f[0].p();
    let top = form.levels.len().saturating_sub(1);
    let mut rat: Vec<Poly> = vec![Vec::new(); top.saturating_sub(1)];
    let mut carry: Poly = Vec::new();
    for m in (2..=top).rev() {
        carry = poly::add(&carry, &form.levels[m]);
        if carry.is_empty() {
            continue;
        }
        let (q, r) = poly::divrem_monic(&carry, f);
        let (u, v) = split.split(&r);
        let d = m as i64 - 1;
        rat[m - 2] = v.iter().map(|c| -c.div_int(d)).collect();
        let dv: Poly = poly::derivative(&v).iter().map(|c| c.div_int(d)).collect();
        carry = poly::add(&poly::add(&q, &u), &dv);
    }
    let mut polypart: Poly = form.levels.first().cloned().unwrap_or_default();
    let mut log = [exact_zero(p), exact_zero(p), exact_zero(p)];
    if top >= 1 {
        carry = poly::add(&carry, &form.levels[1]);
        let (q, mut r) = poly::divrem_monic(&carry, f);
        polypart = poly::add(&polypart, &q);
        r.resize(3, exact_zero(p));
        let df = [cubic.a.clone(), cubic.a.zero_like(), cubic.a.int_like(3)];
        log = cubic.mul(&[r[0].clone(), r[1].clone(), r[2].clone()], &cubic.inv(&df)?);
    }
    let mut anti = vec![exact_zero(p)];
    anti.extend(polypart.iter().enumerate().map(|(k, c)| c.div_int(k as i64 + 1)));
    Ok(EvenIntegral { poly: anti, rat, log })
}

impl EvenIntegral {
    /// Value at `x` with `f(x)` a unit.
    pub fn eval(&self, x: &Padic, f: &[Padic], cubic: &Cubic, prec: i64) -> Result<Padic, PadicError> {
        let u = poly::eval(f, x).inv()?;
        let mut acc = x.zero_like();
        for w in self.rat.iter().rev() {
            acc = &(&acc + &poly::eval(w, x)) * &u;
        }
        let mut val = &acc + &poly::eval(&self.poly, x);
        let arg = [x.clone(), x.int_like(-1), x.zero_like()];
        let lg = cubic.log_unit(&arg, prec)?;
        val = &val + &cubic.trace(&cubic.mul(&self.log, &lg));
        Ok(val)
    }

    /// Laurent expansion at O of the polynomial and rational parts, given
    /// `x(z)` and `1/f(x(z)) = 1/y(z)²`. The logarithmic part regularizes to 0.
    pub fn laurent(&self, xs: &Series, finv: &Series) -> Series {
        let order = xs.order();
        let p = xs.p();
        let eval_poly = |c: &Poly| -> Series {
            let mut acc = Series::zero(p, order, poly::EXACT);
            for coef in c.iter().rev() {
                acc = acc.mul(xs).add_constant(coef).truncate(order);
            }
            acc
        };
        let mut out = eval_poly(&self.poly);
        let mut power: Option<Series> = None;
        for (i, w) in self.rat.iter().enumerate() {
            if 6 * (i as i64 + 1) - 4 >= order {
                break;
            }
            let next = match power.take() {
                None => finv.clone(),
                Some(pw) => pw.mul(finv).truncate(order),
            };
            out = out.add(&eval_poly(w).mul(&next)).truncate(order);
            power = Some(next);
        }
        out
    }
}
