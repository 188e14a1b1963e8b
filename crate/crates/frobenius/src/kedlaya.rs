use num_bigint::BigInt;
use padic::{Padic, PadicError, Series};

use crate::poly::{self, exact_zero, CubicSplit, Poly};
use crate::short::ShortModel;
use crate::FrobError;

pub(crate) fn floor_log(p: u64, k: u64) -> i64 {
    let mut n = 0;
    let mut q = p;
    while q <= k {
        n += 1;
        q = q.saturating_mul(p);
    }
    n
}

/// The function `h = H(x)·y + Σ_{m≥1} V_m(x)·y^(1−2m)` with `deg V_m ≤ 2`.
#[derive(Clone, Debug)]
pub struct Correction {
    pub poly: Poly,
    /// `levels[m − 1] = V_m`.
    pub levels: Vec<Poly>,
}

impl Correction {
    /// Value at an affine point with unit `y`.
    pub fn eval(&self, x: &Padic, y: &Padic) -> Result<Padic, PadicError> {
        let u = (y * y).inv()?;
        let mut acc = x.zero_like();
        for v in self.levels.iter().rev() {
            acc = &(&acc + &poly::eval(v, x)) * &u;
        }
        Ok(&(&acc + &poly::eval(&self.poly, x)) * y)
    }

    /// Laurent expansion at O from the expansions `x(z)`, `y(z)`; only levels
    /// whose leading order `z^(6m−3)` falls below the truncation contribute.
    pub fn laurent(&self, xs: &Series, ys: &Series) -> Result<Series, PadicError> {
        let order = xs.order().min(ys.order());
        let p = xs.p();
        let eval_poly = |c: &Poly| -> Series {
            let mut acc = Series::zero(p, order, crate::poly::EXACT);
            for coef in c.iter().rev() {
                acc = acc.mul(xs).add_constant(coef).truncate(order);
            }
            acc
        };
        let mut out = eval_poly(&self.poly).mul(ys).truncate(order);
        let yinv2 = ys.mul(ys).inverse()?;
        let mut power = ys.clone();
        for (i, v) in self.levels.iter().enumerate() {
            let lead = 6 * (i as i64 + 1) - 3;
            if lead >= order {
                break;
            }
            power = power.mul(&yinv2);
            out = out.add(&eval_poly(v).mul(&power)).truncate(order);
        }
        Ok(out)
    }
}

/// Frobenius action on `{ω0 = dx/2y, ω1 = x·dx/2y}` for the lift `x ↦ x^p`.
///
/// `φ*ω_i = dh_i + Σ_j matrix[j][i]·ω_j` to precision `prec`.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub p: u64,
    pub model: ShortModel,
    pub matrix: [[Padic; 2]; 2],
    pub h: [Correction; 2],
    pub prec: i64,
    pub terms: usize,
}

impl FrobeniusData {
    pub fn trace(&self) -> Padic {
        &self.matrix[0][0] + &self.matrix[1][1]
    }

    pub fn det(&self) -> Padic {
        &(&self.matrix[0][0] * &self.matrix[1][1]) - &(&self.matrix[0][1] * &self.matrix[1][0])
    }

    /// Characteristic polynomial coefficients `(trace, det)`.
    pub fn charpoly(&self) -> (Padic, Padic) {
        (self.trace(), self.det())
    }
}

fn level_of(p: u64, k: usize) -> usize {
    ((2 * k as u64 + 1) * p - 1) as usize / 2
}

/// Digits guaranteed when the binomial expansion stops after term `k_max`.
fn truncation_cap(p: u64, k_max: usize) -> i64 {
    let k = k_max as i64 + 1;
    let m = level_of(p, k_max + 1) as u64;
    k + 1 - floor_log(p, 2 * m + 1) - 1
}

fn binom_minus_half(p: u64, k: usize, prec: i64) -> Padic {
    // (−1/2 choose k) = (−1)^k (2k choose k) / 4^k
    let mut num = BigInt::from(1);
    for j in 0..k as u64 {
        num = num * (2 * k as u64 - j) / (j + 1);
    }
    let den = BigInt::from(4).pow(k as u32);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    Padic::from_ratio(p, &(num * sign), &den, prec)
}

/// Monsky–Washnitzer reduction of `φ*ω_i` for the short model.
pub fn frobenius_matrix(model: &ShortModel, prec: i64) -> Result<FrobeniusData, FrobError> {
    let p = model.p;
    let mut k_max = 1usize;
    while truncation_cap(p, k_max) < prec {
        k_max += 1;
    }
    let work = prec + 2 * k_max as i64 + 6;
    let a = Padic::from_ratio(p, model.a_exact.numer(), model.a_exact.denom(), work);
    let b = Padic::from_ratio(p, model.b_exact.numer(), model.b_exact.denom(), work);
    let one = Padic::one(p, work);
    let zero = Padic::zero(p, work);
    let f: Poly = vec![b.clone(), a.clone(), zero.clone(), one.clone()];
    let split = CubicSplit::new(&f)?;

    // E = f(x^p) − f(x)^p
    let mut fp: Poly = vec![one.clone()];
    let mut base = f.clone();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            fp = poly::mul(&fp, &base);
        }
        e >>= 1;
        if e > 0 {
            base = poly::mul(&base, &base);
        }
    }
    let pu = p as usize;
    let mut fxp = vec![zero.clone(); 3 * pu + 1];
    fxp[0] = b.clone();
    fxp[pu] = a.clone();
    fxp[3 * pu] = one.clone();
    let big_e = poly::sub(&fxp, &fp);

    let mut powers: Vec<Poly> = vec![vec![one.clone()]];
    for k in 1..=k_max {
        let next = poly::mul(&powers[k - 1], &big_e);
        powers.push(next);
    }
    let pp = Padic::from_int(p as u64, p as i64, work);

    let mut columns = Vec::new();
    let mut corrections = Vec::new();
    for i in 0..2usize {
        let shift = pu * (i + 1) - 1;
        let top = level_of(p, k_max);
        let mut entering: Vec<Option<Poly>> = vec![None; top + 1];
        for (k, ek) in powers.iter().enumerate() {
            let c = &pp * &binom_minus_half(p, k, work);
            let mut num = vec![zero.clone(); shift];
            num.extend(ek.iter().map(|t| t * &c));
            entering[level_of(p, k)] = Some(num);
        }
        let mut levels: Vec<Poly> = vec![Vec::new(); top];
        let mut carry: Poly = Vec::new();
        for m in (1..=top).rev() {
            if let Some(num) = entering[m].take() {
                carry = poly::add(&carry, &num);
            }
            if carry.is_empty() {
                continue;
            }
            let (q, r) = poly::divrem_monic(&carry, &f);
            let (u, v) = split.split(&r);
            let d = 2 * m as i64 - 1;
            let dv: Poly = poly::derivative(&v).iter().map(|c| c.mul_int(2).div_int(d)).collect();
            carry = poly::add(&poly::add(&q, &u), &dv);
            levels[m - 1] = v.iter().map(|c| -c.div_int(d)).collect();
        }
        // Level 0: x^(k+2) ≡ −((2k+1)a x^k + 2k b x^(k−1))/(2k+3) modulo d(x^k y).
        let mut pol = carry;
        if let Some(n) = entering[0].take() {
            pol = poly::add(&pol, &n);
        }
        pol.resize(pol.len().max(2), zero.clone());
        let mut hpoly = vec![exact_zero(p); pol.len().saturating_sub(2).max(1)];
        for d in (2..pol.len()).rev() {
            let c = pol[d].clone();
            let k = d - 2;
            let t = c.div_int(2 * k as i64 + 3);
            hpoly[k] = &hpoly[k] + &t;
            pol[k] = &pol[k] - &(&t * &a).mul_int(2 * k as i64 + 1);
            if k >= 1 {
                pol[k - 1] = &pol[k - 1] - &(&t * &b).mul_int(2 * k as i64);
            }
            pol[d] = zero.clone();
        }
        columns.push([pol[0].clone(), pol[1].clone()]);
        corrections.push(Correction { poly: hpoly, levels });
    }
    let cap = truncation_cap(p, k_max);
    let tracked = columns.iter().flatten().map(|c| c.precision()).min().unwrap_or(cap);
    let achieved = cap.min(tracked);
    let m = |j: usize, i: usize| columns[i][j].with_prec(achieved);
    let matrix = [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]];
    let h1 = corrections.pop().expect("two columns");
    let h0 = corrections.pop().expect("two columns");
    Ok(FrobeniusData { p, model: model.clone(), matrix, h: [h0, h1], prec: achieved, terms: k_max + 1 })
}
