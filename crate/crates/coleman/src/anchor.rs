//! Integrals from the tangential base point to Teichmüller points of good disks.

use frobenius::kedlaya::Correction;
use frobenius::poly::{self, CubicSplit, Poly};
use frobenius::{FrobeniusData, ShortModel};
use padic::Padic;

use crate::etale::Cubic;
use crate::even::{integrate_even, EvenForm, EvenIntegral};
use crate::formal::FormalDisk;
use crate::{floor_log, ColemanError};

/// Correction functions written as `h = y·R(x)` with `R = H + Σ V_m/f^m`.
fn r_levels(h: &Correction) -> Vec<Poly> {
    let mut out = vec![h.poly.clone()];
    out.extend(h.levels.iter().cloned());
    out
}

fn min_val(c: &Poly) -> i64 {
    c.iter().filter(|x| !x.is_zero()).map(|x| x.valuation()).min().unwrap_or(padic::NO_TAIL)
}

/// The even integrals `∫h_j·ω_k` and `∫h1·dh0` entering the double-integral system.
#[derive(Clone, Debug)]
pub struct EvenTerms {
    /// `e[j][k] = ∫ h_j ω_k`.
    pub e: [[EvenIntegral; 2]; 2],
    pub ea: EvenIntegral,
    pub cap: i64,
}

pub fn even_terms(frob: &FrobeniusData, split: &CubicSplit, cubic: &Cubic, cap: i64) -> Result<EvenTerms, ColemanError> {
    let p = frob.p;
    let f = &split.f;
    let df = &split.df;
    let r: Vec<Vec<Poly>> = frob.h.iter().map(r_levels).collect();
    let top = r.iter().map(|l| l.len()).max().unwrap_or(1);
    let lift = cap + 2 * (2 * top as i64 / p as i64 + 2) + 8;
    let lift_poly = |c: &Poly| -> Poly { c.iter().map(|x| x.lift_exact(lift)).collect() };
    let r: Vec<Vec<Poly>> = r.iter().map(|ls| ls.iter().map(lift_poly).collect()).collect();
    let half = Padic::from_ratio(p, &1.into(), &2.into(), lift);

    let mut e: Vec<Vec<EvenIntegral>> = Vec::new();
    for rj in &r {
        let mut row = Vec::new();
        for k in 0..2usize {
            let mut form = EvenForm::default();
            let mut xk = vec![poly::exact_zero(p); k];
            xk.push(half.clone());
            for (m, v) in rj.iter().enumerate() {
                form.add_term(m, &poly::mul(v, &xk), &half.one_like());
            }
            row.push(integrate_even(&form, split, cubic)?);
        }
        e.push(row);
    }

    // h1·dh0 = R1·S0·dx with S0 = f'·R0/2 + f·R0'.
    let r0 = &r[0];
    let mut s0: Vec<Poly> = Vec::with_capacity(r0.len());
    for l in 0..r0.len() {
        let mut s: Poly = Vec::new();
        if l == 0 {
            s = poly::add(&poly::mul(f, &poly::derivative(&r0[0])), &poly::scale(&poly::mul(df, &r0[0]), &half));
        } else {
            let c = Padic::from_ratio(p, &(1 - 2 * l as i64).into(), &2.into(), lift);
            s = poly::add(&s, &poly::scale(&poly::mul(df, &r0[l]), &c));
        }
        if l + 1 < r0.len() {
            s = poly::add(&s, &poly::derivative(&r0[l + 1]));
        }
        s0.push(s);
    }
    let r1 = &r[1];
    let v1: Vec<i64> = r1.iter().map(min_val).collect();
    let vs: Vec<i64> = s0.iter().map(min_val).collect();
    let mut form = EvenForm::default();
    let one = Padic::one(p, lift);
    for (i, a) in r1.iter().enumerate() {
        for (j, b) in s0.iter().enumerate() {
            let lvl = i + j;
            let slack = cap + floor_log(p, 2 * lvl as u64 + 2) + 2;
            if v1[i].saturating_add(vs[j]) >= slack {
                continue;
            }
            form.add_term(lvl, &poly::mul(a, b), &one);
        }
    }
    let ea = integrate_even(&form, split, cubic)?;
    let levels = form.levels.len().max(2 * top) as u64;
    let cap = cap - floor_log(p, 2 * levels + 2) - 1;
    let [e0, e1]: [Vec<EvenIntegral>; 2] = e.try_into().map_err(|_| ColemanError::Consistency("rows".into()))?;
    let to2 = |v: Vec<EvenIntegral>| -> [EvenIntegral; 2] {
        let mut it = v.into_iter();
        [it.next().expect("k = 0"), it.next().expect("k = 1")]
    };
    Ok(EvenTerms { e: [to2(e0), to2(e1)], ea, cap })
}

/// Constants fixed by regularization at the tangential base point.
#[derive(Clone, Debug)]
pub struct RegConstants {
    /// `K_i = reg(F_i∘φ) − reg(h_i)`; both `reg(F_i∘φ)` vanish by oddness in λ.
    pub k: [Padic; 2],
    /// Constant `C` of the double-integral identity.
    pub c: Padic,
    /// `reg` of the even integrals, subtracted so that each is regularized to 0.
    pub reg_e: [[Padic; 2]; 2],
    pub reg_ea: Padic,
}

pub fn reg_constants(frob: &FrobeniusData, formal: &FormalDisk, even: &EvenTerms) -> Result<RegConstants, ColemanError> {
    let m = &frob.matrix;
    let h0 = frob.h[0].laurent(&formal.x, &formal.y)?;
    let h1 = frob.h[1].laurent(&formal.x, &formal.y)?;
    let reg_h0 = formal.reg(&h0)?;
    let reg_h1 = formal.reg(&h1)?;
    let k = [-reg_h0.clone(), -reg_h1];
    let f0 = &formal.lambda;
    let f1 = &formal.f1;
    let reg_f0h0 = formal.reg(&f0.mul(&h0))?;
    let reg_f1h0 = formal.reg(&f1.mul(&h0))?;
    let reg_f10 = formal.reg(&f0.mul(f1))?;
    let reg_f11 = formal.reg(&f1.mul(f1))?.div_int(2);
    let mut c = -(&k[1] * &reg_h0);
    c = &c - &(&m[0][1] * &reg_f0h0);
    c = &c - &(&m[1][1] * &reg_f1h0);
    c = &c - &(&(&m[1][0] * &m[0][1]) * &reg_f10);
    c = &c - &(&(&m[1][0] * &m[1][1]) * &reg_f11);
    let reg_of = |ei: &EvenIntegral| formal.reg(&ei.laurent(&formal.x, &formal.finv));
    let reg_e = [
        [reg_of(&even.e[0][0])?, reg_of(&even.e[0][1])?],
        [reg_of(&even.e[1][0])?, reg_of(&even.e[1][1])?],
    ];
    let reg_ea = reg_of(&even.ea)?;
    Ok(RegConstants { k, c, reg_e, reg_ea })
}

/// `(F0, F1, F01)` at a Teichmüller point `(x, y)` of the short model.
#[allow(clippy::too_many_arguments)]
pub fn anchor_values(
    frob: &FrobeniusData,
    model: &ShortModel,
    cubic: &Cubic,
    even: &EvenTerms,
    consts: &RegConstants,
    x: &Padic,
    y: &Padic,
    prec: i64,
) -> Result<[Padic; 3], ColemanError> {
    let m = &frob.matrix;
    let f = model.f();
    let h = [frob.h[0].eval(x, y)?, frob.h[1].eval(x, y)?];
    // (I − Mᵀ)F = h + K
    let one = Padic::one(x.p(), prec + 8);
    let a = [[&one - &m[0][0], -m[1][0].clone()], [-m[0][1].clone(), &one - &m[1][1]]];
    let rhs = [&h[0] + &consts.k[0], &h[1] + &consts.k[1]];
    let det = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
    let f0 = (&(&a[1][1] * &rhs[0]) - &(&a[0][1] * &rhs[1])).try_div(&det)?;
    let f1 = (&(&a[0][0] * &rhs[1]) - &(&a[1][0] * &rhs[0])).try_div(&det)?;
    let ev = |ei: &EvenIntegral, r: &Padic| -> Result<Padic, ColemanError> { Ok(&ei.eval(x, &f, cubic, prec)? - r) };
    let e00 = ev(&even.e[0][0], &consts.reg_e[0][0])?;
    let e01 = ev(&even.e[0][1], &consts.reg_e[0][1])?;
    let e10 = ev(&even.e[1][0], &consts.reg_e[1][0])?;
    let e11 = ev(&even.e[1][1], &consts.reg_e[1][1])?;
    let ea = ev(&even.ea, &consts.reg_ea)?;
    let fl = [f0.clone(), f1.clone()];
    let mut rest = &consts.c + &ea;
    rest = &rest + &(&consts.k[1] * &h[0]);
    rest = &rest + &(&m[0][1] * &(&(&fl[0] * &h[0]) - &e00));
    rest = &rest + &(&m[1][1] * &(&(&fl[1] * &h[0]) - &e01));
    rest = &rest + &(&m[0][0] * &e10);
    rest = &rest + &(&m[1][0] * &e11);
    rest = &rest + &(&consts.k[1] * &(&(&m[0][0] * &f0) + &(&m[1][0] * &f1)));
    let half = Padic::from_ratio(x.p(), &1.into(), &2.into(), prec + 4);
    rest = &rest + &(&(&(&m[0][0] * &m[0][1]) * &(&f0 * &f0)) * &half);
    rest = &rest + &(&(&m[1][0] * &m[0][1]) * &(&f0 * &f1));
    rest = &rest + &(&(&(&m[1][0] * &m[1][1]) * &(&f1 * &f1)) * &half);
    let denom = &(&one - &(&m[0][0] * &m[1][1])) + &(&m[1][0] * &m[0][1]);
    let f01 = rest.try_div(&denom)?;
    let cap = frob.prec.min(even.cap);
    Ok([f0.with_prec(cap), f1.with_prec(cap), f01.with_prec(cap)])
}

/// Laurent series of `x(z)` and friends must cover this many negative exponents.
pub fn laurent_order_needed(frob: &FrobeniusData, even: &EvenTerms) -> i64 {
    let deg_h = frob.h.iter().map(|h| h.poly.len()).max().unwrap_or(1) as i64;
    let deg_e = even.e.iter().flatten().map(|e| e.poly.len()).chain([even.ea.poly.len()]).max().unwrap_or(1) as i64;
    2 * deg_e.max(deg_h + 2) + 12
}

