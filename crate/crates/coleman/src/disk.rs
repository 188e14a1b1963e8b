//! Local expansions on residue disks of the short model, in a parameter `s`
//! normalized to the closed unit disk.

use frobenius::ShortModel;
use padic::{Padic, Series};

use crate::ColemanError;

/// Coordinates and tiny integrals from the disk center, all as series in `s`.
#[derive(Clone, Debug)]
pub struct DiskSeries {
    pub x: Series,
    pub y: Series,
    /// `∫ω0`, `∫ω1` and `∫ω0·∫ω1` from the center.
    pub i0: Series,
    pub i1: Series,
    pub i01: Series,
}

/// `(1 + g)^(1/2)` for a power series `g` whose `s^k` coefficient has valuation ≥ k.
fn sqrt_one_plus(g: &Series, order: usize) -> Series {
    let p = g.p();
    let mut r: Vec<Padic> = Vec::with_capacity(order);
    r.push(Padic::one(p, g.min_precision().min(order as i64 + 64)));
    for n in 1..order {
        let mut acc = g.coeff(n as i64);
        for i in 1..n {
            acc = &acc - &(&r[i] * &r[n - i]);
        }
        r.push(acc.div_int(2));
    }
    Series::new(p, 0, r, order as i64)
}

fn integrals(x: Series, y: Series, omega0: Series) -> Result<DiskSeries, ColemanError> {
    let i0 = omega0.integrate()?;
    let i1 = x.mul(&omega0).integrate()?;
    let i01 = omega0.mul(&i1).integrate()?;
    Ok(DiskSeries { x, y, i0, i1, i01 })
}

/// Disk of a point `(x_c, y_c)` with `y_c` a unit: `x = x_c + p·s`.
pub fn good_disk(model: &ShortModel, xc: &Padic, yc: &Padic, order: usize) -> Result<DiskSeries, ColemanError> {
    let p = model.p;
    let prec = xc.precision().min(yc.precision());
    let pp = Padic::from_int(p, p as i64, prec + 1);
    let fc = &(&(&(xc * xc) * xc) + &(&model.a * xc)) + &model.b;
    let dfc = (xc * xc).mul_int(3) + &model.a;
    // f(x_c + p·s)/f(x_c) − 1
    let mut g = vec![xc.zero_like(); order.max(4)];
    g[1] = (&dfc * &pp).try_div(&fc)?;
    g[2] = (&xc.mul_int(3) * &(&pp * &pp)).try_div(&fc)?;
    g[3] = (&(&pp * &pp) * &pp).try_div(&fc)?;
    g.truncate(order);
    let g = Series::from_coeffs(p, g);
    let r = sqrt_one_plus(&g, order);
    let mut xs = vec![xc.clone(), pp.clone()];
    xs.resize(order, xc.zero_like());
    let x = Series::from_coeffs(p, xs).truncate(order as i64);
    let y = r.scale(yc);
    let omega0 = r.inverse()?.scale(&pp.try_div(&yc.mul_int(2))?);
    integrals(x, y, omega0)
}

/// Disk of a 2-torsion point `(x_w, 0)`: `y = p·s` and `α = dy/f'(x)`.
pub fn weierstrass_disk(model: &ShortModel, xw: &Padic, order: usize) -> Result<DiskSeries, ColemanError> {
    let p = model.p;
    let prec = xw.precision();
    let pp = Padic::from_int(p, p as i64, prec + 1);
    let dfw = (xw * xw).mul_int(3) + &model.a;
    let inv = dfw.inv()?;
    // t = x − x_w solves f'(x_w)·t + 3x_w·t² + t³ = p²·s².
    let mut rhs = vec![xw.zero_like(); order.max(3)];
    rhs[2] = &pp * &pp;
    rhs.truncate(order);
    let rhs = Series::from_coeffs(p, rhs);
    let mut t = Series::zero(p, order as i64, prec);
    for _ in 0..order / 2 + 1 {
        let t2 = t.mul(&t);
        let t3 = t2.mul(&t);
        let next = rhs.sub(&t2.scale(&xw.mul_int(3))).sub(&t3).scale(&inv);
        if next == t {
            break;
        }
        t = next;
    }
    let t = t.with_tail(order as i64);
    let x = t.add_constant(xw);
    let dfx = t.mul(&t).scale(&xw.int_like(3)).add(&t.scale(&xw.mul_int(6))).add_constant(&dfw);
    let mut ys = vec![xw.zero_like(); order.max(2)];
    ys[1] = pp.clone();
    ys.truncate(order);
    let y = Series::from_coeffs(p, ys);
    let omega0 = dfx.inverse()?.scale(&pp);
    integrals(x, y, omega0)
}

/// Parameter of a short-model point in the disk of `(x_c, y_c)`.
pub fn good_parameter(xc: &Padic, x: &Padic) -> Result<Padic, ColemanError> {
    let d = x - xc;
    if d.valuation() < 1 && !d.is_zero() {
        return Err(ColemanError::Domain("point outside the disk".into()));
    }
    Ok(d.shift(-1))
}

pub fn weierstrass_parameter(y: &Padic) -> Result<Padic, ColemanError> {
    if y.valuation() < 1 && !y.is_zero() {
        return Err(ColemanError::Domain("point outside the Weierstrass disk".into()));
    }
    Ok(y.shift(-1))
}
