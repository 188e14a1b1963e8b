use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use padic::{Padic, Series, NO_TAIL};

use crate::curve::CurveModel;

type Q = BigRational;

fn q(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Product truncated to `n` terms.
fn mul_trunc(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of a power series with invertible constant term, `n` terms.
fn inv_trunc(a: &[Q], n: usize) -> Vec<Q> {
    let inv0 = a[0].recip();
    let mut out = vec![Q::zero(); n];
    out[0] = inv0.clone();
    for k in 1..n {
        let mut acc = Q::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &out[k - j];
        }
        out[k] = -(acc * &inv0);
    }
    out
}

/// Exact expansions at O in the parameter `z = −x/y`.
///
/// Laurent series are stored as `(offset, coefficients)`; every series is
/// exact modulo its stored length.
#[derive(Clone, Debug)]
pub struct FormalGroup {
    pub order: usize,
    pub a: [Q; 5],
    /// `w = −1/y`, coefficients of `z^0 .. z^(order-1)`.
    pub w: Vec<Q>,
    /// `x(z)` from `z^-2`.
    pub x: Vec<Q>,
    /// `y(z)` from `z^-3`.
    pub y: Vec<Q>,
    /// Invariant differential `ω = α = (Σ ω_k z^k) dz`.
    pub omega: Vec<Q>,
    /// Formal logarithm `λ(z) = ∫ ω`, from `z^0`.
    pub log: Vec<Q>,
}

impl FormalGroup {
    /// Expansions with `w` known modulo `z^order`; `x`, `y`, `ω` lose a few terms.
    pub fn new(curve: &CurveModel, order: usize) -> Self {
        Self::from_coefficients(curve.a.clone().map(|c| q(&c)), order)
    }

    /// Same expansions for a model with rational coefficients.
    pub fn from_coefficients(a: [Q; 5], order: usize) -> Self {
        let order = order.max(12);
        let [a1, a2, a3, a4, a6] = &a;
        let mut w = vec![Q::zero(); order];
        let mut w2 = vec![Q::zero(); order];
        let mut w3 = vec![Q::zero(); order];
        w[3] = Q::one();
        for n in 3..order {
            if n > 3 {
                let mut s = a1 * &w[n - 1] + a2 * &w[n - 2];
                s += a3 * &w2[n] + a4 * &w2[n - 1] + a6 * &w3[n];
                w[n] = s;
            }
            // Update w² and w³ entries that now have all their inputs.
            let k2 = n + 3;
            if k2 < order {
                let mut acc = Q::zero();
                for i in 3..=(k2 - 3) {
                    acc += &w[i] * &w[k2 - i];
                }
                w2[k2] = acc;
            }
            let k3 = n + 6;
            if k3 < order {
                let mut acc = Q::zero();
                for i in 3..=(k3 - 6) {
                    acc += &w[i] * &w2[k3 - i];
                }
                w3[k3] = acc;
            }
        }
        let m = order - 3;
        let u: Vec<Q> = (0..m).map(|k| w[k + 3].clone()).collect();
        let v = inv_trunc(&u, m);
        let x: Vec<Q> = v.clone();
        let y: Vec<Q> = v.iter().map(|c| -c.clone()).collect();
        // ω = dx / (2y + a1 x + a3), both sides multiplied by z^3.
        let num: Vec<Q> = (0..m).map(|k| &v[k] * qi(k as i64 - 2)).collect();
        let mut den: Vec<Q> = (0..m).map(|k| &y[k] * qi(2)).collect();
        for k in 1..m {
            den[k] += &x[k - 1] * a1;
        }
        if m > 3 {
            den[3] += a3;
        }
        let omega = mul_trunc(&num, &inv_trunc(&den, m), m);
        let mut log = vec![Q::zero(); m + 1];
        for (k, c) in omega.iter().enumerate() {
            log[k + 1] = c / qi(k as i64 + 1);
        }
        FormalGroup { order, a, w, x, y, omega, log }
    }

    /// ω computed from `dy / (3x² + 2a2x + a4 − a1y)`, an independent elimination.
    pub fn omega_via_dy(&self) -> Vec<Q> {
        let [a1, a2, _, a4, _] = &self.a;
        let m = self.x.len();
        // Multiply numerator and denominator by z^4.
        let num: Vec<Q> = (0..m).map(|k| &self.y[k] * qi(k as i64 - 3)).collect();
        let xx = mul_trunc(&self.x, &self.x, m);
        let mut den: Vec<Q> = xx.iter().map(|c| c * qi(3)).collect();
        for k in 2..m {
            den[k] += &self.x[k - 2] * a2 * qi(2);
        }
        if m > 4 {
            den[4] += a4;
        }
        for k in 1..m {
            den[k] -= &self.y[k - 1] * a1;
        }
        mul_trunc(&num, &inv_trunc(&den, m), m)
    }

    /// Compositional inverse of λ, `n` terms from `t^0`.
    pub fn formal_exp(&self, n: usize) -> Vec<Q> {
        let n = n.min(self.log.len());
        let mut e = vec![Q::zero(); n];
        if n > 1 {
            e[1] = Q::one();
        }
        for k in 2..n {
            let comp = compose(&self.log[..n], &e, k + 1);
            e[k] = -comp[k].clone();
        }
        e
    }

    /// p-adic images of the expansions at absolute precision `prec`.
    pub fn padic(&self, p: u64, prec: i64) -> PadicFormal {
        let conv = |c: &Q| Padic::from_ratio(p, c.numer(), c.denom(), prec);
        let mk = |offset: i64, v: &[Q]| Series::new(p, offset, v.iter().map(conv).collect(), NO_TAIL);
        PadicFormal {
            x: mk(-2, &self.x),
            y: mk(-3, &self.y),
            omega: mk(0, &self.omega),
            log: mk(0, &self.log),
        }
    }
}

/// `f(g)` truncated to `n` terms for power series with `g(0) = 0`.
pub fn compose(f: &[Q], g: &[Q], n: usize) -> Vec<Q> {
    let mut acc = vec![Q::zero(); n];
    for c in f.iter().rev() {
        acc = mul_trunc(&acc, g, n);
        acc[0] += c;
    }
    acc
}

/// Expansions at O as p-adic series in `z`.
#[derive(Clone, Debug)]
pub struct PadicFormal {
    pub x: Series,
    pub y: Series,
    pub omega: Series,
    pub log: Series,
}
