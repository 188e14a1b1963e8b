use std::collections::BTreeMap;

use ecmodel::{CurveModel, ReductionType};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use padic::{padic_log, Padic};
use serde::{Deserialize, Serialize};

use crate::SelmerError;

type Q = BigRational;

/// Possible local contributions at a bad prime `l`, as multiples of `log l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WSet {
    pub l: u64,
    pub n_l: u32,
    /// Distinct coefficients `n(N_l − n)/(2N_l)`, increasing, as `"a/b"` text.
    pub values: Vec<String>,
    #[serde(skip)]
    pub exact: Vec<Q>,
    /// `q·log_p(l)` for each coefficient.
    pub padic: Vec<Padic>,
    /// Whether the set came from the override list rather than the formula.
    pub overridden: bool,
}

pub fn parse_rational(s: &str) -> Result<Q, SelmerError> {
    let bad = || SelmerError::Domain(format!("`{s}` is not a rational n/d"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

fn text(q: &Q) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn build(l: u64, n_l: u32, mut exact: Vec<Q>, p: u64, prec: i64, overridden: bool) -> Result<WSet, SelmerError> {
    if l == p {
        return Err(SelmerError::Domain(format!("l = {l} equals p")));
    }
    exact.sort();
    exact.dedup();
    let log_l = padic_log(&Padic::from_int(p, l as i64, prec))?;
    let padic = exact.iter().map(|q| &Padic::from_ratio(p, q.numer(), q.denom(), prec) * &log_l).collect();
    let values = exact.iter().map(text).collect();
    Ok(WSet { l, n_l, values, exact, padic, overridden })
}

/// `W_l = {n(N_l − n)/(2N_l)·log l : 0 ≤ n < N_l}`.
pub fn w_set(l: u64, n_l: u32, p: u64, prec: i64) -> Result<WSet, SelmerError> {
    if n_l == 0 {
        return Err(SelmerError::Domain(format!("N_{l} must be positive")));
    }
    let n = n_l as i64;
    let exact = (0..n).map(|k| Q::new((k * (n - k)).into(), (2 * n).into())).collect();
    build(l, n_l, exact, p, prec, false)
}

/// One value set per bad prime of `curve`. Multiplicative primes use `N_l = ord_l(Δ)`;
/// additive primes contribute `{0}` unless overridden. Overrides may also name
/// primes of good reduction.
pub fn w_sets(curve: &CurveModel, p: u64, prec: i64, overrides: &BTreeMap<u64, Vec<Q>>) -> Result<Vec<WSet>, SelmerError> {
    let mut primes: Vec<u64> = curve.bad_primes()?;
    primes.extend(overrides.keys().copied());
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for l in primes {
        let data = curve.classify_reduction(l);
        if let Some(vals) = overrides.get(&l) {
            if vals.iter().any(|q| q.is_negative()) {
                return Err(SelmerError::Domain(format!("negative override at {l}")));
            }
            out.push(build(l, data.n_l, vals.clone(), p, prec, true)?);
            continue;
        }
        match data.kind {
            ReductionType::Multiplicative => out.push(w_set(l, data.n_l, p, prec)?),
            _ => out.push(build(l, data.n_l, vec![Q::zero()], p, prec, false)?),
        }
    }
    Ok(out)
}

/// `‖w‖ = Σ_l w_l`, keyed by its exact coefficient vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WNorm {
    /// `(l, coefficient of log l)` in increasing `l`.
    pub coeffs: Vec<(u64, String)>,
    #[serde(skip)]
    pub exact: Vec<(u64, Q)>,
    pub value: Padic,
}

impl WNorm {
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|(l, q)| format!("{l}:{q}")).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// All norms over the product of the value sets, in lexicographic order of
/// their coefficient vectors.
pub fn w_norms(sets: &[WSet]) -> Vec<WNorm> {
    let mut sets: Vec<&WSet> = sets.iter().collect();
    sets.sort_by_key(|w| w.l);
    let mut acc: Vec<(Vec<(u64, Q)>, Option<Padic>)> = vec![(Vec::new(), None)];
    for w in sets {
        let mut next = Vec::with_capacity(acc.len() * w.exact.len());
        for (vec, val) in &acc {
            for (q, v) in w.exact.iter().zip(&w.padic) {
                let mut vec = vec.clone();
                vec.push((w.l, q.clone()));
                let val = Some(match val {
                    None => v.clone(),
                    Some(a) => a + v,
                });
                next.push((vec, val));
            }
        }
        acc = next;
    }
    let mut out: BTreeMap<Vec<(u64, Q)>, Padic> = BTreeMap::new();
    for (vec, val) in acc {
        if let Some(v) = val {
            out.entry(vec).or_insert(v);
        }
    }
    out.into_iter()
        .map(|(exact, value)| WNorm { coeffs: exact.iter().map(|(l, q)| (*l, text(q))).collect(), exact, value })
        .collect()
}
