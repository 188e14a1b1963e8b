//! Expansions in the formal disk of O for the short model, in `z = −x/y`.

use frobenius::ShortModel;
use padic::{padic_log, Padic, PadicError, Series, NO_TAIL};

use crate::{floor_log, ColemanError};

/// Laurent data at O and the tangential-base-point regularization.
///
/// Constants of integration are fixed in the formal-log parameter λ: the
/// regularized value of a Laurent series `g` is its `λ^0` coefficient,
/// computed as the residue of `g·ω/λ`, and `log λ` regularizes to 0.
#[derive(Clone, Debug)]
pub struct FormalDisk {
    pub p: u64,
    pub order: i64,
    pub x: Series,
    pub y: Series,
    /// `1/y² = 1/f(x)`.
    pub finv: Series,
    pub omega: Series,
    pub lambda: Series,
    omega_over_lambda: Series,
    /// `F1 = ∫ x·ω`, regularized.
    pub f1: Series,
    /// `F01 = r·log z + rest(z)`, regularized.
    pub f01_residue: Padic,
    pub f01_rest: Series,
}

impl FormalDisk {
    /// Expansions with `x(z)` known through `z^(order−1)`.
    pub fn new(model: &ShortModel, order: i64, prec: i64) -> Result<Self, ColemanError> {
        let p = model.p;
        let n = (order + 4).max(12) as usize;
        let a = Padic::from_ratio(p, model.a_exact.numer(), model.a_exact.denom(), prec);
        let b = Padic::from_ratio(p, model.b_exact.numer(), model.b_exact.denom(), prec);
        // w = z³ + a·z·w² + b·w³
        let zero = Padic::zero(p, prec);
        let mut w = vec![zero.clone(); n];
        let mut w2 = vec![zero.clone(); n];
        let mut w3 = vec![zero.clone(); n];
        w[3] = Padic::one(p, prec);
        for k in 3..n {
            if k > 3 {
                w[k] = &(&a * &w2[k - 1]) + &(&b * &w3[k]);
            }
            let k2 = k + 3;
            if k2 < n {
                let mut acc = zero.clone();
                for i in 3..=(k2 - 3) {
                    acc = &acc + &(&w[i] * &w[k2 - i]);
                }
                w2[k2] = acc;
            }
            let k3 = k + 6;
            if k3 < n {
                let mut acc = zero.clone();
                for i in 3..=(k3 - 6) {
                    acc = &acc + &(&w[i] * &w2[k3 - i]);
                }
                w3[k3] = acc;
            }
        }
        let u = Series::from_coeffs(p, w[3..].to_vec());
        let v = u.inverse()?;
        let x = Series::new(p, -2, v.coeffs().to_vec(), NO_TAIL);
        let y = Series::new(p, -3, v.coeffs().iter().map(|c| -c).collect(), NO_TAIL);
        // ω = dx/(2y)
        let dx = x.derivative();
        let omega = dx.mul(&y.scale(&Padic::from_int(p, 2, prec)).inverse()?);
        let lambda = omega.integrate()?;
        let finv = y.mul(&y).inverse()?;
        let omega_over_lambda = omega.mul(&lambda.inverse()?);
        let mut disk = FormalDisk {
            p,
            order,
            x: x.clone(),
            y,
            finv,
            omega: omega.clone(),
            lambda,
            omega_over_lambda,
            f1: Series::zero(p, 0, prec),
            f01_residue: zero.clone(),
            f01_rest: Series::zero(p, 0, prec),
        };
        let raw = x.mul(&omega).integrate()?;
        let c = disk.reg(&raw)?;
        let f1 = raw.add_constant(&-c);
        let integrand = omega.mul(&f1);
        let r = integrand.coeff(-1);
        let rest = drop_below(&integrand, 0).integrate()?;
        let c01 = disk.reg(&rest)?;
        disk.f01_rest = rest.add_constant(&-c01);
        disk.f01_residue = r;
        disk.f1 = f1;
        Ok(disk)
    }

    /// Regularized value: the `λ^0` coefficient of `g`.
    pub fn reg(&self, g: &Series) -> Result<Padic, PadicError> {
        let prod = g.mul(&self.omega_over_lambda);
        if prod.order() <= -1 {
            return Err(PadicError::Precision("expansion too short to regularize".into()));
        }
        Ok(prod.coeff(-1))
    }

    /// Digits to which a series of length `order` evaluates at `v(z) ≥ vz`.
    pub fn eval_cap(&self, series: &Series, vz: i64) -> i64 {
        let t = series.order().max(1);
        t * vz - floor_log(self.p, t as u64) - 1
    }

    /// `(F0, F1, F01)` at a point with parameter `z`, `v(z) ≥ 1`.
    pub fn values(&self, z: &Padic) -> Result<(Padic, Padic, Padic), ColemanError> {
        let vz = z.valuation();
        if z.is_zero() || vz < 1 {
            return Err(ColemanError::Domain("point is not in the formal disk or is O".into()));
        }
        let cap = self.eval_cap(&self.lambda, vz).min(self.eval_cap(&self.f01_rest, vz));
        let f0 = self.lambda.eval(z)?.with_prec(cap);
        let f1 = self.f1.eval(z)?.with_prec(cap - vz);
        let f01 = (&(&self.f01_residue * &padic_log(z)?) + &self.f01_rest.eval(z)?).with_prec(cap);
        Ok((f0, f1, f01))
    }
}

/// Keeps only exponents ≥ `k`; the caller accounts for the dropped terms.
fn drop_below(s: &Series, k: i64) -> Series {
    if s.offset() >= k {
        return s.clone();
    }
    let skip = (k - s.offset()) as usize;
    Series::new(s.p(), k, s.coeffs()[skip.min(s.coeffs().len())..].to_vec(), s.tail())
}
