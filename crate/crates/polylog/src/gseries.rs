//! The series `g_n` with `g_0 = v − 1 − (v−1)^p/(v^p − (v−1)^p)` and
//! `g'_{n+1} = −v^{-1}·g_n/(1 − v)`, `g_{n+1}(0) = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use padic::{Fp, Padic, Series};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GRepr {
    /// Coefficients in F_p, lowest degree first.
    ModP(Vec<u64>),
    /// Truncated power series over Q_p.
    Padic(Vec<Padic>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GSeries {
    pub p: u64,
    pub n: usize,
    pub repr: GRepr,
}

impl GSeries {
    /// Degree of the mod-p polynomial, or truncation order of the p-adic series.
    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            GRepr::ModP(c) => c.iter().rposition(|&a| a != 0),
            GRepr::Padic(c) => c.iter().rposition(|a| !a.is_zero()),
        }
    }
}

pub enum Mode {
    ModP,
    Padic { terms: usize, prec: i64 },
}

pub fn g_series(p: u64, n: usize, mode: Mode) -> Result<GSeries, crate::PolylogError> {
    let repr = match mode {
        Mode::ModP => GRepr::ModP(g_series_mod_p(p, n)?),
        Mode::Padic { terms, prec } => GRepr::Padic(g_series_padic(p, n, terms, prec)?.coeffs().to_vec()),
    };
    Ok(GSeries { p, n, repr })
}

/// `g_n mod p` for `n ≤ 2`. Modulo p, `g_0 = v − v^p` and every quotient by
/// `1 − v` below is exact.
pub fn g_series_mod_p(p: u64, n: usize) -> Result<Vec<u64>, crate::PolylogError> {
    if p < 3 || p % 2 == 0 {
        return Err(crate::PolylogError::Domain(format!("p = {p} must be an odd prime")));
    }
    let f = Fp::new(p);
    let mut g = vec![0u64; p as usize + 1];
    g[1] = 1;
    g[p as usize] = p - 1;
    let inv = inverses(p);
    for _ in 0..n {
        g = step_mod_p(&f, &g, &inv)?;
    }
    Ok(g)
}

/// `1/k mod p` for `k < p`.
pub(crate) fn inverses(p: u64) -> Vec<u64> {
    let mut inv = vec![0u64; p as usize];
    if p > 1 {
        inv[1] = 1;
    }
    for k in 2..p as usize {
        inv[k] = (p - (p / k as u64) * inv[(p % k as u64) as usize] % p) % p;
    }
    inv
}

fn step_mod_p(f: &Fp, g: &[u64], inv: &[u64]) -> Result<Vec<u64>, crate::PolylogError> {
    // q = g/(1 − v) by prefix sums; the remainder g(1) must vanish.
    let mut q = Vec::with_capacity(g.len());
    let mut acc = 0u64;
    for &c in g {
        acc = f.add(acc, c);
        q.push(acc);
    }
    if acc != 0 {
        return Err(crate::PolylogError::Domain("g_n(1) ≠ 0 mod p; quotient by 1 − v is not a polynomial".into()));
    }
    if q[0] != 0 {
        return Err(crate::PolylogError::Domain("g_n(0) ≠ 0".into()));
    }
    // g' = −q/v, so the coefficient of v^k in g is −q_k/k.
    let mut out = vec![0u64; g.len()];
    for k in 1..g.len() {
        if q[k] == 0 {
            continue;
        }
        if k as u64 >= f.p {
            return Err(crate::PolylogError::Domain("integration past degree p − 1 mod p".into()));
        }
        out[k] = f.neg(f.mul(q[k], inv[k]));
    }
    Ok(out)
}

fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k as usize - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `g_n` over Q_p through `v^(terms−1)`, coefficients at absolute precision `prec`.
pub fn g_series_padic(p: u64, n: usize, terms: usize, prec: i64) -> Result<Series, crate::PolylogError> {
    if p < 3 || p % 2 == 0 {
        return Err(crate::PolylogError::Domain(format!("p = {p} must be an odd prime")));
    }
    let work = prec + 2 * (terms as f64).log(p as f64).ceil() as i64 * (n as i64 + 1) + 4;
    let binom = binomial_row(p);
    // (v − 1)^p and D = v^p − (v − 1)^p, exact integers.
    let mut vm1: Vec<BigInt> = (0..=p as usize)
        .map(|k| if (p as usize - k) % 2 == 0 { binom[k].clone() } else { -binom[k].clone() })
        .collect();
    vm1.truncate(terms.max(1));
    let mut d: Vec<BigInt> = (0..p as usize).map(|k| if (p as usize - k) % 2 == 0 { -binom[k].clone() } else { binom[k].clone() }).collect();
    d.push(BigInt::zero());
    debug_assert!(d[0].is_one());
    let to_p = |c: &BigInt| Padic::from_bigint(p, c, work);
    // 1/D by the recurrence e_k = −Σ_{j≥1} d_j e_{k−j}
    let dp: Vec<(usize, Padic)> = d.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, to_p(c))).collect();
    let mut e: Vec<Padic> = Vec::with_capacity(terms);
    e.push(Padic::one(p, work));
    for k in 1..terms {
        let mut acc = Padic::zero(p, work);
        for (j, c) in &dp {
            if *j > k {
                break;
            }
            acc = &acc + &(c * &e[k - j]);
        }
        e.push(-acc);
    }
    // g_0 = v − 1 − (v − 1)^p·e
    let vm1p: Vec<(usize, Padic)> = vm1.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, to_p(c))).collect();
    let mut g: Vec<Padic> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = Padic::zero(p, work);
        for (j, c) in &vm1p {
            if *j > k {
                break;
            }
            acc = &acc + &(c * &e[k - j]);
        }
        g.push(-acc);
    }
    g[0] = &g[0] - &Padic::one(p, work);
    if terms > 1 {
        g[1] = &g[1] + &Padic::one(p, work);
    }
    for _ in 0..n {
        let mut acc = Padic::zero(p, work);
        let mut next = vec![Padic::zero(p, work); terms];
        for k in 0..terms {
            acc = &acc + &g[k];
            if k == 0 {
                if !acc.is_zero() {
                    return Err(crate::PolylogError::Domain("g_n(0) ≠ 0".into()));
                }
                continue;
            }
            next[k] = -(acc.div_int(k as i64));
        }
        g = next;
    }
    let g: Vec<Padic> = g.into_iter().map(|c| c.with_prec(prec)).collect();
    Ok(Series::new(p, 0, g, padic::NO_TAIL))
}
